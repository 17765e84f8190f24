//! Symmetric innovation laws and their moment bookkeeping.

use rand::Rng;
use rand_distr::{Distribution, Normal, Pareto, StudentT};
use serde::{Deserialize, Serialize};
use statrs::function::gamma::ln_gamma;

use crate::error::{invalid, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "law", rename_all = "snake_case")]
pub enum InnovationSpec {
    Gaussian { sd: f64 },
    Uniform { half_width: f64 },
    Rademacher,
    Student { dof: f64 },
    /// `±P` with `P` Pareto(scale 1, `tail_index`) and an independent fair sign.
    ParetoSymmetric { tail_index: f64 },
}

impl InnovationSpec {
    pub fn validate(&self) -> Result<()> {
        let (name, p) = match *self {
            InnovationSpec::Gaussian { sd } => ("sd", sd),
            InnovationSpec::Uniform { half_width } => ("half_width", half_width),
            InnovationSpec::Rademacher => return Ok(()),
            InnovationSpec::Student { dof } => ("dof", dof),
            InnovationSpec::ParetoSymmetric { tail_index } => ("tail_index", tail_index),
        };
        if !(p.is_finite() && p > 0.0) {
            return invalid(format!("innovation parameter {name} must be positive, got {p}"));
        }
        Ok(())
    }

    /// `‖ξ₀‖_∞` for bounded laws.
    pub fn sup_norm(&self) -> Option<f64> {
        match *self {
            InnovationSpec::Uniform { half_width } => Some(half_width),
            InnovationSpec::Rademacher => Some(1.0),
            _ => None,
        }
    }

    /// Supremum of the moment orders `m` with `E|ξ|^m < ∞`. The supremum
    /// itself is excluded for Student and Pareto laws.
    pub fn moment_sup(&self) -> f64 {
        match *self {
            InnovationSpec::Student { dof } => dof,
            InnovationSpec::ParetoSymmetric { tail_index } => tail_index,
            _ => f64::INFINITY,
        }
    }

    pub fn has_moment(&self, m: f64) -> bool {
        m < self.moment_sup() || self.moment_sup().is_infinite()
    }

    /// `E|ξ₀|^m`, or `None` when infinite.
    pub fn abs_moment(&self, m: f64) -> Option<f64> {
        if m == 0.0 {
            return Some(1.0);
        }
        if !self.has_moment(m) {
            return None;
        }
        let ln_sqrt_pi = 0.5 * std::f64::consts::PI.ln();
        let value = match *self {
            InnovationSpec::Gaussian { sd } => {
                let ln = m * sd.ln() + 0.5 * m * 2f64.ln() + ln_gamma(0.5 * (m + 1.0)) - ln_sqrt_pi;
                ln.exp()
            }
            InnovationSpec::Uniform { half_width } => half_width.powf(m) / (m + 1.0),
            InnovationSpec::Rademacher => 1.0,
            InnovationSpec::Student { dof } => {
                let ln = 0.5 * m * dof.ln() + ln_gamma(0.5 * (m + 1.0)) + ln_gamma(0.5 * (dof - m))
                    - ln_sqrt_pi
                    - ln_gamma(0.5 * dof);
                ln.exp()
            }
            InnovationSpec::ParetoSymmetric { tail_index } => tail_index / (tail_index - m),
        };
        Some(value)
    }

    /// `‖ξ₀‖_m`; `m = ∞` gives the sup-norm.
    pub fn norm(&self, m: f64) -> Option<f64> {
        if m.is_infinite() {
            return self.sup_norm();
        }
        self.abs_moment(m).map(|v| v.powf(1.0 / m))
    }

    pub fn variance(&self) -> Option<f64> {
        match *self {
            InnovationSpec::Gaussian { sd } => Some(sd * sd),
            InnovationSpec::Uniform { half_width } => Some(half_width * half_width / 3.0),
            InnovationSpec::Rademacher => Some(1.0),
            InnovationSpec::Student { dof } if dof > 2.0 => Some(dof / (dof - 2.0)),
            InnovationSpec::ParetoSymmetric { tail_index } if tail_index > 2.0 => {
                Some(tail_index / (tail_index - 2.0))
            }
            _ => None,
        }
    }

    pub fn sampler(&self) -> Result<InnovationSampler> {
        self.validate()?;
        let s = match *self {
            InnovationSpec::Gaussian { sd } => InnovationSampler::Gaussian(
                Normal::new(0.0, sd).map_err(|e| crate::Error::InvalidParameter(e.to_string()))?,
            ),
            InnovationSpec::Uniform { half_width } => InnovationSampler::Uniform(half_width),
            InnovationSpec::Rademacher => InnovationSampler::Rademacher,
            InnovationSpec::Student { dof } => InnovationSampler::Student(
                StudentT::new(dof).map_err(|e| crate::Error::InvalidParameter(e.to_string()))?,
            ),
            InnovationSpec::ParetoSymmetric { tail_index } => InnovationSampler::Pareto(
                Pareto::new(1.0, tail_index)
                    .map_err(|e| crate::Error::InvalidParameter(e.to_string()))?,
            ),
        };
        Ok(s)
    }
}

#[derive(Debug, Clone, Copy)]
pub enum InnovationSampler {
    Gaussian(Normal<f64>),
    Uniform(f64),
    Rademacher,
    Student(StudentT<f64>),
    Pareto(Pareto<f64>),
}

impl InnovationSampler {
    #[inline]
    pub fn draw<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        match self {
            InnovationSampler::Gaussian(d) => d.sample(rng),
            InnovationSampler::Uniform(h) => h * (2.0 * rng.random::<f64>() - 1.0),
            InnovationSampler::Rademacher => {
                if rng.random::<bool>() {
                    1.0
                } else {
                    -1.0
                }
            }
            InnovationSampler::Student(d) => d.sample(rng),
            InnovationSampler::Pareto(d) => {
                let x = d.sample(rng);
                if rng.random::<bool>() {
                    x
                } else {
                    -x
                }
            }
        }
    }

    pub fn fill<R: Rng + ?Sized>(&self, rng: &mut R, out: &mut [f64]) {
        for v in out {
            *v = self.draw(rng);
        }
    }
}
