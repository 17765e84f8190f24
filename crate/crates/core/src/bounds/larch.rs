//! Dependence envelopes of LARCH(∞) inputs and iid-driven shifts.

use crate::dependence::DecayLaw;
use crate::error::{invalid, Error, Result};
use crate::scalar::Real;

/// Which LARCH recursion the envelope describes.
pub enum LarchKind<'a, T> {
    /// Causal model with `|a_j| ≲ j^{−a}`.
    Causal { coeff_exponent: T },
    /// Non-causal model with bounded innovations.
    NonCausal {
        /// `A(x) = Σ_{|j|≥x} |a_j|`.
        tail: &'a dyn Fn(T) -> T,
        /// `‖ξ‖_∞`.
        sup_norm: T,
        /// `E|ξ|`.
        mean_abs: T,
        /// The intercept `a`.
        intercept: T,
    },
}

/// Least nonincreasing majorant, in place.
fn monotone_majorant<T: Real>(values: &mut [T]) {
    for i in (0..values.len().saturating_sub(1)).rev() {
        values[i] = values[i].max(values[i + 1]);
    }
}

/// Tabulated envelope for the dependence coefficients of a LARCH(∞) input on
/// lags `0..=lags`, up to a multiplicative constant.
///
/// Causal: `r^{1−a}·log^{a−1} r`. Non-causal:
/// `(‖ξ‖_∞ Σ_{1≤k<r/2} kΛ^{k−1} A(r/(2k)) + Λ^{r/2}/(1−Λ))·E|ξ|·|a|`.
/// Both are replaced by their least nonincreasing majorant on the grid, so
/// the result is a valid decay law; past the grid it clamps to the last
/// value.
pub fn larch_input_bounds<T: Real>(
    kind: &LarchKind<'_, T>,
    contraction: T,
    lags: usize,
) -> Result<DecayLaw<T>> {
    if !(contraction >= T::zero()) {
        return invalid("contraction constant must be nonnegative");
    }
    if contraction >= T::one() {
        return Err(Error::ContractionViolated(
            contraction.to_f64().unwrap_or(f64::NAN),
        ));
    }
    if lags < 3 {
        return invalid("the lag grid needs at least 3 points");
    }
    let mut table: Vec<T> = match kind {
        LarchKind::Causal { coeff_exponent } => {
            let a = *coeff_exponent;
            if !(a > T::one()) || !a.is_finite() {
                return invalid("causal envelope needs a coefficient exponent a > 1");
            }
            (0..=lags)
                .map(|r| {
                    if r < 2 {
                        T::zero()
                    } else {
                        let r = T::lit(r as f64);
                        r.powf(T::one() - a) * r.ln().powf(a - T::one())
                    }
                })
                .collect()
        }
        LarchKind::NonCausal {
            tail,
            sup_norm,
            mean_abs,
            intercept,
        } => {
            let lam = contraction;
            let scale = *mean_abs * intercept.abs();
            (0..=lags)
                .map(|r| {
                    let mut acc = T::zero();
                    let mut k = 1usize;
                    while 2 * k < r {
                        let x = T::lit(r as f64) / T::lit((2 * k) as f64);
                        let w = T::lit(k as f64) * lam.powi(k as i32 - 1);
                        acc = acc + w * tail(x);
                        k += 1;
                    }
                    let geo = lam.powf(T::lit(r as f64) / T::lit(2.0)) / (T::one() - lam);
                    (*sup_norm * acc + geo) * scale
                })
                .collect()
        }
    };
    monotone_majorant(&mut table);
    DecayLaw::tabulated(table)
}

/// `η(r) ≤ 2δ(⌊r/2⌋)` for shifts of iid inputs with coupling coefficients `δ`.
pub fn iid_shift_eta<T: Real>(delta: &DecayLaw<T>, r: u64) -> T {
    T::lit(2.0) * delta.eval(r / 2)
}
