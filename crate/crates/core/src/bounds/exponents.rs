//! Moment exponents and Berry–Esseen type rate constants.

use serde::{Deserialize, Serialize};

use super::conditions::clt_condition;
use crate::dependence::{DependenceFamily, MomentSpec};
use crate::error::{Error, Result};
use crate::scalar::Real;

fn quadratic<T: Real>(m: T, family: DependenceFamily, decay_exp: T) -> Result<(T, T)> {
    let zeta = m - T::lit(2.0);
    let d = decay_exp;
    match family {
        DependenceFamily::Kappa => Ok((
            T::lit(2.0) * d - T::lit(3.0) - zeta,
            d * zeta - T::lit(2.0) * zeta - T::one(),
        )),
        DependenceFamily::Lambda => Ok((
            T::lit(2.0) * d - T::lit(6.0) - zeta,
            d * zeta - T::lit(4.0) * zeta - T::lit(2.0),
        )),
        other => Err(Error::Unsupported(format!(
            "no moment exponent for {other}-dependence"
        ))),
    }
}

/// Supremum `A` (κ) or `B` (λ) of the admissible moment gain `δ`: the
/// positive root of `δ² + pδ − q`, capped at 1. The supremum is open.
///
/// The root is evaluated as `2q/(p + √(p²+4q))` when `p > 0` to avoid
/// cancellation; results agree with the textbook form to about 1e-9
/// relative.
pub fn moment_exponent<T: Real>(m: T, family: DependenceFamily, decay_exp: T) -> Result<T> {
    if !(m > T::lit(2.0)) || !m.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "moment order m = {m:?} must be finite and exceed 2"
        )));
    }
    if !decay_exp.is_finite() {
        return Err(Error::InvalidParameter("decay exponent must be finite".into()));
    }
    let (p, q) = quadratic(m, family, decay_exp)?;
    let radicand = p * p + T::lit(4.0) * q;
    if radicand < T::zero() {
        return Err(Error::HypothesisFailure(format!(
            "negative radicand {radicand:?}: decay exponent {decay_exp:?} too small for m = {m:?}"
        )));
    }
    let s = radicand.sqrt();
    let root = if p > T::zero() {
        T::lit(2.0) * q / (p + s)
    } else {
        (s - p) / T::lit(2.0)
    };
    if !(root > T::zero()) {
        return Err(Error::HypothesisFailure(format!(
            "no admissible moment gain: decay exponent {decay_exp:?} is at or below the threshold for m = {m:?}"
        )));
    }
    Ok(root.min(T::one()))
}

/// Rate constants attached to a moment order and a decay exponent.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RateProfile<T> {
    pub m: T,
    pub zeta: T,
    pub family: DependenceFamily,
    pub decay_exp: T,
    /// `A` for κ, `B` for λ.
    pub a_or_b: T,
    pub c_star: T,
    pub c_prime: T,
    /// Block exponents at `δ = a_or_b` (the open limit).
    pub a_star: T,
    pub b_star: T,
    /// Open supremum of admissible `δ`; equals `a_or_b`.
    pub delta_max: T,
}

pub fn rate_profile<T: Real>(m: T, family: DependenceFamily, decay_exp: T) -> Result<RateProfile<T>> {
    let cond = clt_condition(&m, family, &decay_exp)?;
    if !cond.satisfied {
        return Err(Error::HypothesisFailure(format!(
            "{family} exponent {decay_exp:?} does not exceed the threshold {:?}",
            cond.threshold
        )));
    }
    let ab = moment_exponent(m, family, decay_exp)?;
    let one = T::one();
    let two = T::lit(2.0);
    let three = T::lit(3.0);
    let d = decay_exp;
    let delta = ab;
    let (c_star, a_star, b_star) = match family {
        DependenceFamily::Kappa => {
            let c = (d - one) * ab / (ab + two * d * (one + ab));
            let a = (two + delta + two * d * delta) / (delta + two * d * (one + delta));
            (c, a, (two + a) / (one + two * d))
        }
        _ => {
            let c = (d + one) * ab / (two + ab + two * d * (one + ab));
            let denom = two + delta + two * d * (one + delta);
            (
                c,
                (three + delta + two * d * delta) / denom,
                (three + two * delta) / denom,
            )
        }
    };
    Ok(RateProfile {
        m,
        zeta: m - two,
        family,
        decay_exp,
        a_or_b: ab,
        c_star,
        c_prime: c_star / (three + ab),
        a_star,
        b_star,
        delta_max: ab,
    })
}

/// Convenience wrapper taking a [`MomentSpec`].
pub fn rate_profile_for<T: Real>(
    moments: &MomentSpec<T>,
    family: DependenceFamily,
    decay_exp: T,
) -> Result<RateProfile<T>> {
    rate_profile(moments.m(), family, decay_exp)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn golden_ratio_case() {
        let a = moment_exponent(4.0, DependenceFamily::Kappa, 3.0).unwrap();
        assert!((a - (5f64.sqrt() - 1.0) / 2.0).abs() < 1e-15);
        let p = rate_profile(4.0, DependenceFamily::Kappa, 3.0).unwrap();
        assert!((p.c_star - 0.119_701_675_181_841_13f64).abs() < 1e-12);
        assert!((p.c_prime - p.c_star / (3.0 + a)).abs() < 1e-15);
    }

    #[test]
    fn root_solves_the_quadratic() {
        for (m, fam, d) in [
            (3.0, DependenceFamily::Kappa, 3.5),
            (5.0, DependenceFamily::Lambda, 6.0),
            (2.5, DependenceFamily::Kappa, 4.1),
        ] {
            let a: f64 = moment_exponent(m, fam, d).unwrap();
            if a < 1.0 {
                let (p, q) = quadratic(m, fam, d).unwrap();
                assert!((a * a + p * a - q).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn large_kappa_limit() {
        // the root tends to ζ/2
        let a = moment_exponent(3.0f64, DependenceFamily::Kappa, 1e6).unwrap();
        assert!((a - 0.5).abs() < 1e-5);
        let a = moment_exponent(10.0, DependenceFamily::Kappa, 1e6).unwrap();
        assert_eq!(a, 1.0);
    }

    #[test]
    fn c_star_limits() {
        let p = rate_profile(1e6f64, DependenceFamily::Kappa, 1e6).unwrap();
        assert!((p.c_star - 0.25).abs() < 1e-3);
        for k in [10.0, 1e3, 1e6, 1e9] {
            let p = rate_profile(2.5, DependenceFamily::Kappa, k).unwrap();
            assert!(p.c_star < 1.0 / 6.0);
        }
    }

    #[test]
    fn hypothesis_failures() {
        assert!(matches!(
            moment_exponent(4.0, DependenceFamily::Kappa, 2.5),
            Err(Error::HypothesisFailure(_))
        ));
        assert!(matches!(
            rate_profile(4.0, DependenceFamily::Lambda, 5.0),
            Err(Error::HypothesisFailure(_))
        ));
        assert!(moment_exponent(2.0, DependenceFamily::Kappa, 5.0).is_err());
        assert!(moment_exponent(3.0, DependenceFamily::Eta, 5.0).is_err());
    }

    proptest! {
        #[test]
        fn exponent_sanity(m in 2.01..10.0f64, t in 0.001..1.0f64, lam in any::<bool>()) {
            let family = if lam { DependenceFamily::Lambda } else { DependenceFamily::Kappa };
            let thr = clt_condition(&m, family, &0.0).unwrap().threshold;
            let d = thr + t * (50.0 - thr);
            prop_assume!(d > thr);
            let p = rate_profile(m, family, d).unwrap();
            let zeta = m - 2.0;
            prop_assert!(p.a_or_b > 0.0 && p.a_or_b <= 1f64.min(zeta) * (1.0 + 1e-9));
            prop_assert!(p.c_prime < p.c_star);
            prop_assert!(p.c_star > 0.0);
            if lam {
                prop_assert!(p.c_star <= (d + 1.0) / (4.0 * d + 3.0) + 1e-9);
            } else {
                prop_assert!(p.c_star < 0.25 + 1e-9);
            }
            prop_assert!(0.0 < p.b_star && p.b_star < p.a_star && p.a_star < 1.0);
        }
    }
}
