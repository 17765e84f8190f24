//! Finite-order Volterra (polynomial) functionals of an input sequence.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

/// One coefficient `a^{(k)}_{j_1..j_k}`; the order `k` is `lags.len()`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChaosTerm {
    pub lags: Vec<i64>,
    pub coeff: f64,
}

/// Coordinatewise Lipschitz data induced by a chaos: the weights `b_s` for
/// `s ∈ [-W, W]`, the growth exponent `ℓ = K − 1` and `L = Σ|a|`.
#[derive(Debug, Clone, PartialEq)]
pub struct InducedShift {
    pub lag_window: usize,
    /// `b[s + W]` holds `b_s`.
    pub b: Vec<f64>,
    pub ell: f64,
    pub l1: f64,
}

impl InducedShift {
    pub fn b_at(&self, s: i64) -> f64 {
        let w = self.lag_window as i64;
        if s.abs() > w {
            0.0
        } else {
            self.b[(s + w) as usize]
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Chaos {
    terms: Vec<ChaosTerm>,
    lag_window: usize,
}

impl Chaos {
    pub fn new(terms: Vec<ChaosTerm>, lag_window: usize) -> Result<Self> {
        let w = lag_window as i64;
        for t in &terms {
            if !t.coeff.is_finite() {
                return invalid("chaos coefficients must be finite");
            }
            if let Some(&lag) = t.lags.iter().find(|l| l.abs() > w) {
                return Err(Error::InvalidParameter(format!(
                    "lag {lag} outside the lag window [-{w}, {w}]"
                )));
            }
        }
        Ok(Chaos { terms, lag_window })
    }

    pub fn terms(&self) -> &[ChaosTerm] {
        &self.terms
    }

    pub fn lag_window(&self) -> usize {
        self.lag_window
    }

    /// Highest order `K` among the terms.
    pub fn order(&self) -> usize {
        self.terms.iter().map(|t| t.lags.len()).max().unwrap_or(0)
    }

    /// Weights `b_s = Σ_k Σ^{(k,s)} |a^{(k)}|`, where a coefficient is
    /// counted once per position at which its index tuple takes the value
    /// `s`, together with `ℓ = K − 1` and `L = Σ_k Σ |a^{(k)}|`.
    pub fn induced_shift(&self) -> InducedShift {
        let w = self.lag_window as i64;
        let mut b = vec![0.0; 2 * self.lag_window + 1];
        for t in &self.terms {
            for &lag in &t.lags {
                b[(lag + w) as usize] += t.coeff.abs();
            }
        }
        InducedShift {
            lag_window: self.lag_window,
            b,
            ell: self.order().saturating_sub(1) as f64,
            l1: self.terms.iter().map(|t| t.coeff.abs()).sum(),
        }
    }

    /// `X_t = Σ a Y_{t−j_1}···Y_{t−j_k}` for `t = 0..n`, where `input[t + W]`
    /// holds `Y_t`.
    pub fn apply(&self, input: &[f64], n: usize) -> Result<Vec<f64>> {
        let w = self.lag_window;
        let needed = n + 2 * w;
        if input.len() < needed {
            return Err(Error::InputTooShort {
                needed,
                available: input.len(),
            });
        }
        let mut out = vec![0.0; n];
        for (t, x) in out.iter_mut().enumerate() {
            let mut acc = 0.0;
            for term in &self.terms {
                let mut prod = term.coeff;
                for &lag in &term.lags {
                    prod *= input[(t as i64 + w as i64 - lag) as usize];
                }
                acc += prod;
            }
            *x = acc;
        }
        Ok(out)
    }
}
