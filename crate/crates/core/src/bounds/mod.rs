//! Closed-form bounds, theorem hypotheses and rate exponents.
//!
//! Functions that only need field operations are generic over [`Field`]
//! so they can run on exact rationals; the rest use [`Real`].
//!
//! [`Field`]: crate::Field
//! [`Real`]: crate::Real

mod classify;
mod conditions;
mod covariance;
mod exponents;
mod heredity;
mod larch;

pub use classify::{classify_decay, DecayShape, Envelope, EnvelopeBase, MomentOrder};
pub use conditions::{clt_condition, donsker_condition, CltCondition, DonskerRequirement};
pub use covariance::{cov_bound, sigma2_bound, Sigma2Bound};
pub use exponents::{moment_exponent, rate_profile, rate_profile_for, RateProfile};
pub use heredity::{
    general_exponents, heredity_general, heredity_lipschitz, HeredityBound, HeredityProblem,
    ShiftWeights, DEFAULT_WEIGHT_HORIZON,
};
pub use larch::{iid_shift_eta, larch_input_bounds, LarchKind};
