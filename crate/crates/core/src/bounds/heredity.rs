//! Heredity of weak dependence through Lipschitz-type maps `X_t = H(Y_{t−·})`.

use serde::{Deserialize, Serialize};

use crate::dependence::{CoefficientBound, DecayLaw, DependenceFamily};
use crate::error::{invalid, Error, Result};
use crate::scalar::Real;

/// Default number of exact lags kept when shift weights come from a law.
pub const DEFAULT_WEIGHT_HORIZON: usize = 4096;

/// Symmetric weights `b_j`, accessed through `|j|`, with cached suffix sums.
///
/// The first `table.len()` magnitudes are stored exactly; the remainder past
/// the table is an analytic upper bound when the weights come from a law and
/// zero otherwise.
#[derive(Debug, Clone, PartialEq)]
pub struct ShiftWeights<T> {
    table: Vec<T>,
    /// `Σ_{i=r}^{H} b_i`
    plain: Vec<T>,
    /// `Σ_{i=r}^{H} i·b_i`
    weighted: Vec<T>,
    law: Option<DecayLaw<T>>,
}

impl<T: Real> ShiftWeights<T> {
    /// Finite support: `table[i] = b_i = b_{−i}`, zero past the end.
    pub fn from_table(table: Vec<T>) -> Result<Self> {
        if table.is_empty() {
            return invalid("shift weights need at least one entry");
        }
        if table.iter().any(|v| !(v.is_finite() && *v >= T::zero())) {
            return invalid("shift weights must be finite and nonnegative");
        }
        Ok(Self::build(table, None))
    }

    /// `b_j = law(|j|)`; lags past `horizon` are covered by a tail bound.
    pub fn from_law(law: DecayLaw<T>, horizon: usize) -> Result<Self> {
        law.validate()?;
        if let DecayLaw::Tabulated { table } = &law {
            if *table.last().expect("validated") == T::zero() {
                return Self::from_table(table.clone());
            }
        }
        let table = (0..=horizon as u64).map(|i| law.eval(i)).collect();
        Ok(Self::build(table, Some(law)))
    }

    /// Collapses a two-sided sequence indexed by `j ∈ [start, start+len)` to
    /// the symmetric magnitudes `max(|b_j|, |b_{−j}|)`.
    pub fn from_two_sided(start: i64, values: &[T]) -> Result<Self> {
        let reach = values
            .iter()
            .enumerate()
            .map(|(k, _)| (start + k as i64).unsigned_abs())
            .max()
            .unwrap_or(0) as usize;
        let mut table = vec![T::zero(); reach + 1];
        for (k, v) in values.iter().enumerate() {
            let j = (start + k as i64).unsigned_abs() as usize;
            table[j] = table[j].max(v.abs());
        }
        Self::from_table(table)
    }

    fn build(table: Vec<T>, law: Option<DecayLaw<T>>) -> Self {
        let h = table.len();
        let mut plain = vec![T::zero(); h + 1];
        let mut weighted = vec![T::zero(); h + 1];
        for i in (0..h).rev() {
            plain[i] = plain[i + 1] + table[i];
            weighted[i] = weighted[i + 1] + T::lit(i as f64) * table[i];
        }
        ShiftWeights {
            table,
            plain,
            weighted,
            law,
        }
    }

    pub fn table(&self) -> &[T] {
        &self.table
    }

    /// `b_{|j|}`.
    pub fn get(&self, j: i64) -> T {
        let i = j.unsigned_abs() as usize;
        match (self.table.get(i), &self.law) {
            (Some(v), _) => *v,
            (None, Some(law)) => law.eval(i as u64),
            (None, None) => T::zero(),
        }
    }

    /// Bound on `Σ_{i≥n} b_i` for `n` past the table.
    fn plain_remainder(&self, n: usize) -> T {
        let Some(law) = &self.law else {
            return T::zero();
        };
        let n = T::lit(n as f64);
        match law {
            DecayLaw::Geometric { amplitude, rate } => {
                if *amplitude == T::zero() {
                    T::zero()
                } else if *rate == T::zero() {
                    T::infinity()
                } else {
                    let q = (-*rate).exp();
                    *amplitude * q.powf(n) / (T::one() - q)
                }
            }
            DecayLaw::Riemannian { amplitude, exponent } => {
                let a = *exponent;
                if *amplitude == T::zero() {
                    T::zero()
                } else if a <= T::one() {
                    T::infinity()
                } else {
                    let base = T::one() + n;
                    *amplitude * (base.powf(-a) + base.powf(T::one() - a) / (a - T::one()))
                }
            }
            DecayLaw::Tabulated { .. } => T::infinity(),
        }
    }

    /// Bound on `Σ_{i≥n} i·b_i` for `n` past the table.
    fn weighted_remainder(&self, n: usize) -> T {
        let Some(law) = &self.law else {
            return T::zero();
        };
        let nf = T::lit(n as f64);
        match law {
            DecayLaw::Geometric { amplitude, rate } => {
                if *amplitude == T::zero() {
                    T::zero()
                } else if *rate == T::zero() {
                    T::infinity()
                } else {
                    let q = (-*rate).exp();
                    let one_q = T::one() - q;
                    *amplitude * q.powf(nf) * (nf - (nf - T::one()) * q) / (one_q * one_q)
                }
            }
            DecayLaw::Riemannian { amplitude, exponent } => {
                // i(1+i)^{-a} ≤ (1+i)^{1-a}
                let a = *exponent;
                let two = T::lit(2.0);
                if *amplitude == T::zero() {
                    T::zero()
                } else if a <= two {
                    T::infinity()
                } else {
                    let base = T::one() + nf;
                    *amplitude * (base.powf(T::one() - a) + base.powf(two - a) / (a - two))
                }
            }
            DecayLaw::Tabulated { .. } => T::infinity(),
        }
    }

    fn one_sided_plain(&self, r: usize) -> T {
        let h = self.table.len();
        if r < h {
            self.plain[r] + self.plain_remainder(h)
        } else {
            self.plain_remainder(r)
        }
    }

    fn one_sided_weighted(&self, r: usize) -> T {
        let h = self.table.len();
        if r < h {
            self.weighted[r] + self.weighted_remainder(h)
        } else {
            self.weighted_remainder(r)
        }
    }

    /// `Σ_{|i|≥r} b_i`.
    pub fn plain_tail(&self, r: u64) -> T {
        let r = r as usize;
        if r == 0 {
            self.table[0] + T::lit(2.0) * self.one_sided_plain(1)
        } else {
            T::lit(2.0) * self.one_sided_plain(r)
        }
    }

    /// `Σ_{|j|≥r} |j|·b_j`.
    pub fn weighted_tail(&self, r: u64) -> T {
        T::lit(2.0) * self.one_sided_weighted((r as usize).max(1))
    }

    /// `L = Σ_j b_j`.
    pub fn total(&self) -> T {
        self.plain_tail(0)
    }
}

/// Data of a heredity bound: the shift weights of the map, its growth
/// exponent `ℓ`, the input moments and the input's dependence coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct HeredityProblem<T> {
    pub b: ShiftWeights<T>,
    pub ell: T,
    /// Input moment order `m'`; may be `+∞` for bounded inputs.
    pub m_prime: T,
    pub y_norm1: T,
    pub y_normmp: T,
    pub input_coeff: CoefficientBound<T>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HeredityBound<T> {
    pub value: T,
    /// The `r` attaining the minimum.
    pub argmin_r: u64,
    /// True when an unspecified multiplicative constant was set to 1.
    pub up_to_constant: bool,
}

impl<T: Real> HeredityProblem<T> {
    pub fn validate(&self) -> Result<()> {
        if !(self.ell >= T::zero() && self.ell.is_finite()) {
            return invalid("growth exponent ell must be finite and nonnegative");
        }
        if !(self.m_prime >= T::one()) {
            return invalid("input moment order m' must be at least 1");
        }
        if !(self.y_norm1 >= T::zero() && self.y_norm1.is_finite()) {
            return invalid("||Y||_1 must be finite and nonnegative");
        }
        if !(self.y_normmp >= T::zero()) {
            return invalid("||Y||_m' must be nonnegative");
        }
        if !self.b.total().is_finite() {
            return invalid("shift weights are not summable");
        }
        self.input_coeff.law.validate()
    }

    /// Checks `m' ≥ (ℓ+1)·m` for the declared target moment order.
    pub fn check_target_moment(&self, m: T) -> Result<()> {
        if self.m_prime >= (self.ell + T::one()) * m {
            Ok(())
        } else {
            Err(Error::InsufficientMoments(format!(
                "m' = {:?} is below (ell+1)*m = {:?}",
                self.m_prime,
                (self.ell + T::one()) * m
            )))
        }
    }

    fn check_family(&self, family: DependenceFamily) -> Result<()> {
        match family {
            DependenceFamily::Eta | DependenceFamily::Lambda => {}
            other => {
                return Err(Error::Unsupported(format!(
                    "heredity bounds exist for eta and lambda, not {other}"
                )))
            }
        }
        if self.input_coeff.family != family {
            return Err(Error::InvalidParameter(format!(
                "input coefficients are {}, requested {family}",
                self.input_coeff.family
            )));
        }
        Ok(())
    }
}

/// Exhaustive minimum of `term(r)` over `0 ≤ 2r ≤ k`; ties keep the smallest `r`.
fn scan<T: Real>(k: u64, term: impl Fn(u64) -> T) -> (T, u64) {
    let mut best = (T::infinity(), 0);
    for r in 0..=k / 2 {
        let v = term(r);
        if v < best.0 {
            best = (v, r);
        }
    }
    best
}

/// Bound for a map that is Lipschitz in each coordinate (`ℓ = 0`).
///
/// λ: `min_r 2·Σ_{|i|≥r}b_i·‖Y‖₁ + (2r+1)²L²·λ_Y(k−2r)`;
/// η: `min_r 2·Σ_{|i|≥r}b_i·‖Y‖₁ + (2r+1)L·η_Y(k−2r)`.
pub fn heredity_lipschitz<T: Real>(
    k: u64,
    prob: &HeredityProblem<T>,
    family: DependenceFamily,
) -> Result<HeredityBound<T>> {
    prob.validate()?;
    prob.check_family(family)?;
    if prob.ell != T::zero() {
        return Err(Error::Unsupported(
            "ell > 0: use heredity_general".to_string(),
        ));
    }
    let l = prob.b.total();
    let two = T::lit(2.0);
    let lambda = family == DependenceFamily::Lambda;
    let (value, argmin_r) = scan(k, |r| {
        let w = T::lit((2 * r + 1) as f64);
        let gain = if lambda { w * w * l * l } else { w * l };
        two * prob.b.plain_tail(r) * prob.y_norm1 + gain * prob.input_coeff.eval(k - 2 * r)
    });
    Ok(HeredityBound {
        value,
        argmin_r,
        up_to_constant: false,
    })
}

/// Exponents `(power on (2r+1), power on the input coefficient)` for the
/// general bound.
pub fn general_exponents<T: Real>(family: DependenceFamily, ell: T, m_prime: T) -> (T, T) {
    let two = T::lit(2.0);
    if m_prime.is_infinite() {
        return match family {
            DependenceFamily::Lambda => (two, T::one()),
            _ => (T::one(), T::one()),
        };
    }
    let d = m_prime - T::one();
    match family {
        DependenceFamily::Lambda => (two, (d - ell) / (d + ell)),
        _ => (T::one() + ell / d, (d - ell) / d),
    }
}

/// Bound for maps with polynomial growth `ℓ > 0`, with the unspecified
/// constant set to 1.
///
/// λ: `min_r Σ_{|j|≥r}|j|b_j + (2r+1)²·λ_Y(k−2r)^{(m'−1−ℓ)/(m'−1+ℓ)}`;
/// η: `min_r Σ_{|j|≥r}|j|b_j + (2r+1)^{1+ℓ/(m'−1)}·η_Y(k−2r)^{(m'−1−ℓ)/(m'−1)}`.
pub fn heredity_general<T: Real>(
    k: u64,
    prob: &HeredityProblem<T>,
    family: DependenceFamily,
) -> Result<HeredityBound<T>> {
    prob.validate()?;
    prob.check_family(family)?;
    if !(prob.ell > T::zero()) {
        return Err(Error::Unsupported(
            "ell = 0: use heredity_lipschitz".to_string(),
        ));
    }
    if !(prob.m_prime > T::one() + prob.ell) {
        return Err(Error::InsufficientMoments(format!(
            "m' = {:?} must exceed 1 + ell = {:?}",
            prob.m_prime,
            T::one() + prob.ell
        )));
    }
    if !prob.b.weighted_tail(0).is_finite() {
        return invalid("sum of |j| b_j diverges");
    }
    let (p_width, p_coeff) = general_exponents(family, prob.ell, prob.m_prime);
    let (value, argmin_r) = scan(k, |r| {
        let w = T::lit((2 * r + 1) as f64);
        prob.b.weighted_tail(r) + w.powf(p_width) * prob.input_coeff.eval(k - 2 * r).powf(p_coeff)
    });
    Ok(HeredityBound {
        value,
        argmin_r,
        up_to_constant: true,
    })
}
