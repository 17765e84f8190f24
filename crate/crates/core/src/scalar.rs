//! Scalar abstractions.
//!
//! Formula evaluators that need transcendental functions (`powf`, `sqrt`,
//! `exp`) are generic over [`Real`]. Closed forms that are pure rational
//! functions of their inputs (theorem thresholds, decay-envelope exponents)
//! are generic over [`Field`], so they can also be evaluated exactly with
//! `num_rational::Ratio` or `BigRational`.

use std::fmt::Debug;

use num_traits::{Float, FromPrimitive, Num};

/// Floating-point scalar: `f32` or `f64`.
pub trait Real: Float + FromPrimitive + Debug + Send + Sync + 'static {
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("literal representable in scalar type")
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// Ordered field used for exact-capable closed forms.
pub trait Field: Num + Clone + PartialOrd + FromPrimitive + Debug {
    fn int(x: i64) -> Self {
        Self::from_i64(x).expect("small integer representable in field")
    }
}

impl<T: Num + Clone + PartialOrd + FromPrimitive + Debug> Field for T {}
