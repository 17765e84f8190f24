//! Covariance bounds and the long-run variance series.

use serde::{Deserialize, Serialize};

use crate::dependence::{DecayLaw, DependenceFamily, MomentSpec};
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Bound on `|Cov(X₀, X_k)|`.
///
/// Under κ-dependence the coefficient itself bounds the covariance. Under
/// λ-dependence a truncation argument gives
/// `9 μ^{1/(m−1)} λ(k)^{(m−2)/(m−1)}` with `μ = E|X₀|^m`.
pub fn cov_bound<T: Real>(
    family: DependenceFamily,
    k: u64,
    law: &DecayLaw<T>,
    moments: &MomentSpec<T>,
) -> Result<T> {
    let eps = law.eval(k);
    match family {
        DependenceFamily::Kappa => Ok(eps),
        DependenceFamily::Lambda => {
            let m1 = moments.m() - T::one();
            Ok(T::lit(9.0) * moments.mu().powf(T::one() / m1) * eps.powf(moments.zeta() / m1))
        }
        other => Err(Error::Unsupported(format!(
            "no covariance bound for {other}-dependence"
        ))),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Sigma2Bound<T> {
    /// `Σ_{|k|≤K}` of the covariance bound.
    pub partial_sum: T,
    /// Analytic summability verdict; `None` for tabulated laws.
    pub converges: Option<bool>,
    /// Exponent (Riemannian) or rate (geometric) of the summed sequence.
    pub summability_exponent: Option<T>,
}

/// Partial sum of [`cov_bound`] over `|k| ≤ horizon` and whether the full
/// series converges.
pub fn sigma2_bound<T: Real>(
    family: DependenceFamily,
    law: &DecayLaw<T>,
    moments: &MomentSpec<T>,
    horizon: u64,
) -> Result<Sigma2Bound<T>> {
    let mut tail = T::zero();
    for k in (1..=horizon).rev() {
        tail = tail + cov_bound(family, k, law, moments)?;
    }
    let partial_sum = cov_bound(family, 0, law, moments)? + T::lit(2.0) * tail;
    let power = match family {
        DependenceFamily::Kappa => T::one(),
        _ => moments.zeta() / (moments.m() - T::one()),
    };
    let (converges, summability_exponent) = match law {
        DecayLaw::Geometric { amplitude, rate } => {
            let s = *rate * power;
            (Some(s > T::zero() || *amplitude == T::zero()), Some(s))
        }
        DecayLaw::Riemannian { amplitude, exponent } => {
            let s = *exponent * power;
            (Some(s > T::one() || *amplitude == T::zero()), Some(s))
        }
        DecayLaw::Tabulated { table } => {
            if *table.last().expect("validated law") == T::zero() {
                (Some(true), None)
            } else {
                (None, None)
            }
        }
    };
    Ok(Sigma2Bound {
        partial_sum,
        converges,
        summability_exponent,
    })
}
