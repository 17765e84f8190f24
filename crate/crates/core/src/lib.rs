//! Simulation and verification laboratory for weakly dependent stationary
//! sequences.
//!
//! - [`dependence`]: decay laws, ψ forms of the weak-dependence families,
//!   moment bookkeeping.
//! - [`models`]: seeded simulators (linear filters, LARCH(∞), Volterra,
//!   AR(1)) that compose through dependent inputs.
//! - [`bounds`]: closed-form covariance and heredity bounds, theorem
//!   conditions and rate exponents.
//! - [`empirics`]: Monte Carlo checks of the central limit theorem and its
//!   convergence rate.
//!
//! Formula evaluators are generic over the scalar type; the `*F64` aliases
//! below fix it to `f64`.

pub mod bounds;
pub mod dependence;
pub mod empirics;
mod error;
pub mod models;
pub mod rng;
mod scalar;
pub mod seed;

pub use dependence::{
    eval_decay, psi, CoefficientBound, DecayLaw, DependenceFamily, LawKind, MomentSpec,
};
pub use error::{Error, Result};
pub use scalar::{Field, Real};

pub type DecayLawF64 = DecayLaw<f64>;
pub type MomentSpecF64 = MomentSpec<f64>;
pub type CoefficientBoundF64 = CoefficientBound<f64>;
pub type HeredityProblemF64 = bounds::HeredityProblem<f64>;
pub type RateProfileF64 = bounds::RateProfile<f64>;
pub type EnvelopeF64 = bounds::Envelope<f64>;
