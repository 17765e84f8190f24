//! Shared domain types: decay laws for dependence coefficients, the ψ forms
//! of the weak-dependence families, and moment bookkeeping.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::scalar::Real;

/// A nonincreasing bound `r ↦ ε(r)` on a sequence of dependence
/// coefficients, indexed by the lag `r ≥ 0`.
///
/// The Riemannian law is written `C·(1+r)^{-a}` so that `r = 0` is finite.
/// Tabulated laws clamp to their last entry past the end of the table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DecayLaw<T> {
    Geometric { amplitude: T, rate: T },
    Riemannian { amplitude: T, exponent: T },
    Tabulated { table: Vec<T> },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LawKind {
    Geometric,
    Riemannian,
    Tabulated,
}

impl<T: Real> DecayLaw<T> {
    pub fn geometric(amplitude: T, rate: T) -> Result<Self> {
        let law = DecayLaw::Geometric { amplitude, rate };
        law.validate()?;
        Ok(law)
    }

    pub fn riemannian(amplitude: T, exponent: T) -> Result<Self> {
        let law = DecayLaw::Riemannian { amplitude, exponent };
        law.validate()?;
        Ok(law)
    }

    pub fn tabulated(table: Vec<T>) -> Result<Self> {
        let law = DecayLaw::Tabulated { table };
        law.validate()?;
        Ok(law)
    }

    /// Checks the parameter domain and, for tables, monotonicity.
    pub fn validate(&self) -> Result<()> {
        match self {
            DecayLaw::Geometric { amplitude, rate } => {
                if !(amplitude.is_finite() && *amplitude >= T::zero()) {
                    return invalid("geometric amplitude must be finite and nonnegative");
                }
                if !(rate.is_finite() && *rate >= T::zero()) {
                    return invalid("geometric rate must be finite and nonnegative");
                }
            }
            DecayLaw::Riemannian { amplitude, exponent } => {
                if !(amplitude.is_finite() && *amplitude >= T::zero()) {
                    return invalid("riemannian amplitude must be finite and nonnegative");
                }
                if !(exponent.is_finite() && *exponent >= T::zero()) {
                    return invalid("riemannian exponent must be finite and nonnegative");
                }
            }
            DecayLaw::Tabulated { table } => {
                if table.is_empty() {
                    return invalid("tabulated law needs at least one entry");
                }
                if table.iter().any(|v| !(v.is_finite() && *v >= T::zero())) {
                    return invalid("tabulated law entries must be finite and nonnegative");
                }
                if table.windows(2).any(|w| w[1] > w[0]) {
                    return invalid("tabulated law must be nonincreasing");
                }
            }
        }
        Ok(())
    }

    pub fn kind(&self) -> LawKind {
        match self {
            DecayLaw::Geometric { .. } => LawKind::Geometric,
            DecayLaw::Riemannian { .. } => LawKind::Riemannian,
            DecayLaw::Tabulated { .. } => LawKind::Tabulated,
        }
    }

    /// Rate of a geometric law or exponent of a Riemannian one.
    pub fn exponent(&self) -> Option<T> {
        match self {
            DecayLaw::Geometric { rate, .. } => Some(*rate),
            DecayLaw::Riemannian { exponent, .. } => Some(*exponent),
            DecayLaw::Tabulated { .. } => None,
        }
    }

    pub fn eval(&self, r: u64) -> T {
        match self {
            DecayLaw::Geometric { amplitude, rate } => {
                *amplitude * (-*rate * T::lit(r as f64)).exp()
            }
            DecayLaw::Riemannian { amplitude, exponent } => {
                *amplitude * (T::one() + T::lit(r as f64)).powf(-*exponent)
            }
            DecayLaw::Tabulated { table } => {
                let idx = (r as usize).min(table.len() - 1);
                table[idx]
            }
        }
    }
}

/// Free-function form of [`DecayLaw::eval`].
pub fn eval_decay<T: Real>(law: &DecayLaw<T>, r: u64) -> T {
    law.eval(r)
}

/// The weak-dependence families; each one fixes the ψ form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DependenceFamily {
    Kappa,
    KappaPrime,
    Eta,
    Theta,
    Lambda,
}

impl DependenceFamily {
    pub const ALL: [DependenceFamily; 5] = [
        DependenceFamily::Kappa,
        DependenceFamily::KappaPrime,
        DependenceFamily::Eta,
        DependenceFamily::Theta,
        DependenceFamily::Lambda,
    ];

    pub fn name(self) -> &'static str {
        match self {
            DependenceFamily::Kappa => "kappa",
            DependenceFamily::KappaPrime => "kappa_prime",
            DependenceFamily::Eta => "eta",
            DependenceFamily::Theta => "theta",
            DependenceFamily::Lambda => "lambda",
        }
    }
}

impl std::fmt::Display for DependenceFamily {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// ψ(u, v, a, b) for block sizes `u`, `v` and Lipschitz constants `a`, `b`.
///
/// `kappa_prime` and `theta` are the causal variants; no theorem here
/// consumes them, they are kept for comparison experiments.
pub fn psi<T: Real>(family: DependenceFamily, u: u64, v: u64, a: T, b: T) -> T {
    let u = T::lit(u as f64);
    let v = T::lit(v as f64);
    match family {
        DependenceFamily::Kappa => u * v * a * b,
        DependenceFamily::KappaPrime => v * a * b,
        DependenceFamily::Eta => u * a + v * b,
        DependenceFamily::Theta => v * b,
        DependenceFamily::Lambda => u * v * a * b + u * a + v * b,
    }
}

/// Moment order `m > 2` of the observed process and `μ = E|X₀|^m`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MomentSpec<T> {
    m: T,
    mu: T,
}

impl<T: Real> MomentSpec<T> {
    pub fn new(m: T, mu: T) -> Result<Self> {
        if !(m > T::lit(2.0)) {
            return invalid("moment order m must exceed 2");
        }
        if !(mu > T::zero() && mu.is_finite()) {
            return invalid("mu = E|X0|^m must be positive and finite");
        }
        Ok(MomentSpec { m, mu })
    }

    pub fn m(&self) -> T {
        self.m
    }

    pub fn mu(&self) -> T {
        self.mu
    }

    /// ζ = m − 2.
    pub fn zeta(&self) -> T {
        self.m - T::lit(2.0)
    }
}

/// A dependence family together with the decay law bounding its coefficients.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoefficientBound<T> {
    pub family: DependenceFamily,
    pub law: DecayLaw<T>,
}

impl<T: Real> CoefficientBound<T> {
    pub fn new(family: DependenceFamily, law: DecayLaw<T>) -> Result<Self> {
        law.validate()?;
        Ok(CoefficientBound { family, law })
    }

    pub fn eval(&self, r: u64) -> T {
        self.law.eval(r)
    }
}
