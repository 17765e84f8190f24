//! Finite coefficient windows for moving-average style filters.

use serde::{Deserialize, Serialize};

use crate::dependence::DecayLaw;
use crate::error::{invalid, Result};

/// Largest half-width a law-generated window may reach.
pub const MAX_WINDOW: usize = 1 << 20;

/// Default relative L¹ truncation tolerance for law-generated windows.
pub const DEFAULT_TRUNCATION_TOL: f64 = 1e-8;

/// Coefficients `α_i` for `i` in `start ..= start + values.len() - 1`.
///
/// `truncated_tail` is an upper bound on `Σ|α_i|` over the lags that were
/// cut off when the window was generated from a decay law (zero for
/// explicit windows).
#[derive(Debug, Clone, PartialEq)]
pub struct CoeffWindow {
    start: i64,
    values: Vec<f64>,
    truncated_tail: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Sidedness {
    /// Lags `-I ..= I`.
    TwoSided,
    /// Lags `1 ..= J`.
    Causal,
}

impl CoeffWindow {
    pub fn new(start: i64, values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return invalid("coefficient window must not be empty");
        }
        if values.iter().any(|v| !v.is_finite()) {
            return invalid("coefficients must be finite");
        }
        Ok(CoeffWindow {
            start,
            values,
            truncated_tail: 0.0,
        })
    }

    /// `α_0 = 1`, all else zero.
    pub fn identity() -> Self {
        CoeffWindow {
            start: 0,
            values: vec![1.0],
            truncated_tail: 0.0,
        }
    }

    /// Causal window `a_1, …, a_J`.
    pub fn causal(values: Vec<f64>) -> Result<Self> {
        Self::new(1, values)
    }

    /// Two-sided window `α_{-I}, …, α_I` from `values` of odd length.
    pub fn symmetric(values: Vec<f64>) -> Result<Self> {
        if values.len() % 2 == 0 {
            return invalid("two-sided window needs odd length");
        }
        let half = (values.len() / 2) as i64;
        Self::new(-half, values)
    }

    /// Window with `α_i = law(|i|)`, cut at the smallest half-width whose
    /// dropped L¹ mass is at most `tolerance` times the total mass.
    ///
    /// With `skip_zero` the lag 0 entry is forced to zero (non-causal LARCH).
    pub fn from_law(
        law: &DecayLaw<f64>,
        sides: Sidedness,
        tolerance: f64,
        skip_zero: bool,
    ) -> Result<Self> {
        law.validate()?;
        if !(tolerance > 0.0) {
            return invalid("truncation tolerance must be positive");
        }
        let multiplicity = match sides {
            Sidedness::TwoSided => 2.0,
            Sidedness::Causal => 1.0,
        };
        // one-sided tail Σ_{i>h} law(i)
        let tail_after = |h: usize| -> f64 {
            match law {
                DecayLaw::Geometric { amplitude, rate } => {
                    if *rate <= 0.0 {
                        f64::INFINITY
                    } else {
                        amplitude * (-rate * (h as f64 + 1.0)).exp() / (1.0 - (-rate).exp())
                    }
                }
                DecayLaw::Riemannian { amplitude, exponent } => {
                    if *exponent <= 1.0 {
                        f64::INFINITY
                    } else {
                        amplitude * (h as f64 + 1.0).powf(1.0 - exponent) / (exponent - 1.0)
                    }
                }
                DecayLaw::Tabulated { table } => {
                    if *table.last().unwrap() > 0.0 {
                        f64::INFINITY
                    } else {
                        table.iter().skip(h + 1).sum()
                    }
                }
            }
        };
        if !tail_after(0).is_finite() {
            return invalid("decay law is not summable; L1 norm would be infinite");
        }
        let first = match sides {
            Sidedness::TwoSided => 0usize,
            Sidedness::Causal => 1usize,
        };
        let lag0 = if skip_zero || sides == Sidedness::Causal {
            0.0
        } else {
            law.eval(0)
        };
        let total = lag0 + multiplicity * tail_after(0);
        let mut half = first.max(1);
        while multiplicity * tail_after(half) > tolerance * total {
            half += 1;
            if half > MAX_WINDOW {
                return invalid("window exceeds the maximum half-width at this tolerance");
            }
        }
        let truncated_tail = multiplicity * tail_after(half);
        let (start, values) = match sides {
            Sidedness::TwoSided => {
                let h = half as i64;
                let v = (-h..=h)
                    .map(|i| {
                        if i == 0 && skip_zero {
                            0.0
                        } else {
                            law.eval(i.unsigned_abs())
                        }
                    })
                    .collect();
                (-h, v)
            }
            Sidedness::Causal => (1, (1..=half as u64).map(|i| law.eval(i)).collect()),
        };
        Ok(CoeffWindow {
            start,
            values,
            truncated_tail,
        })
    }

    pub fn start(&self) -> i64 {
        self.start
    }

    /// Last lag in the window.
    pub fn end(&self) -> i64 {
        self.start + self.values.len() as i64 - 1
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn get(&self, lag: i64) -> f64 {
        if lag < self.start || lag > self.end() {
            0.0
        } else {
            self.values[(lag - self.start) as usize]
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, f64)> + '_ {
        self.values
            .iter()
            .enumerate()
            .map(move |(k, &v)| (self.start + k as i64, v))
    }

    pub fn truncated_tail(&self) -> f64 {
        self.truncated_tail
    }

    pub fn l1_norm(&self) -> f64 {
        self.values.iter().map(|v| v.abs()).sum()
    }

    /// `Σ_{|i|>cut} |α_i|`, including mass dropped at generation time.
    pub fn l1_tail(&self, cut: u64) -> f64 {
        self.iter()
            .filter(|(i, _)| i.unsigned_abs() > cut)
            .map(|(_, v)| v.abs())
            .sum::<f64>()
            + self.truncated_tail
    }

    pub fn sum(&self) -> f64 {
        self.values.iter().sum()
    }

    pub fn sum_sq(&self) -> f64 {
        self.values.iter().map(|v| v * v).sum()
    }

    /// Number of extra input values needed beyond `n` outputs.
    pub fn span(&self) -> usize {
        (self.end() - self.start) as usize
    }
}

/// Serializable description of a coefficient window.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "source", rename_all = "snake_case")]
pub enum CoeffSpec {
    Explicit {
        start: i64,
        values: Vec<f64>,
    },
    Law {
        law: DecayLaw<f64>,
        sides: Sidedness,
        #[serde(default = "default_tol")]
        tolerance: f64,
    },
}

fn default_tol() -> f64 {
    DEFAULT_TRUNCATION_TOL
}

impl CoeffSpec {
    pub fn resolve(&self, skip_zero: bool) -> Result<CoeffWindow> {
        match self {
            CoeffSpec::Explicit { start, values } => CoeffWindow::new(*start, values.clone()),
            CoeffSpec::Law {
                law,
                sides,
                tolerance,
            } => CoeffWindow::from_law(law, *sides, *tolerance, skip_zero),
        }
    }
}
