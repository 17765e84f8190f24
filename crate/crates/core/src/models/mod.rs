//! Simulators for the model families: iid innovations, two-sided linear
//! filters and their absolute values, causal and non-causal LARCH(∞),
//! finite Volterra expansions and contracting AR(1) chains.
//!
//! Filter-type models accept either iid innovations or another
//! [`ProcessSpec`] as input, which gives Bernoulli shifts of dependent
//! inputs.

mod innovation;
mod simulate;
mod spec;
mod volterra;
mod window;

pub use innovation::{InnovationSampler, InnovationSpec};
pub use simulate::{
    forgetting_steps, larch_causal_contraction, larch_noncausal_contraction, linear_filter,
    picard_error_bound, simulate, simulate_iid, PreparedProcess, SamplePath, FORGETTING_TOL,
};
pub use spec::{Input, Model, MomentCheck, ProcessSpec, DEFAULT_CENTERING_MC};
pub use volterra::{Chaos, ChaosTerm, InducedShift};
pub use window::{CoeffSpec, CoeffWindow, Sidedness, DEFAULT_TRUNCATION_TOL, MAX_WINDOW};
