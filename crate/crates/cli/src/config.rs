//! JSON experiment configuration.
//!
//! Moment orders and exponents are decimals, counts are integers and seeds
//! are decimal strings (plain integers are accepted on input).

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use weakdep::bounds::{DecayShape, HeredityProblem, ShiftWeights, DEFAULT_WEIGHT_HORIZON};
use weakdep::models::ProcessSpec;
use weakdep::{CoefficientBound, DecayLaw, DependenceFamily};

use crate::error::{config_err, CliError, Result};

pub const SCHEMA_VERSION: u32 = 1;

/// Replicate count below which the Monte Carlo checks are refused.
pub const MIN_REPLICATES: usize = 100;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Check {
    Bounds,
    Clt,
    Rate,
    Moments,
    DecayProbe,
}

impl Check {
    pub fn name(self) -> &'static str {
        match self {
            Check::Bounds => "bounds",
            Check::Clt => "clt",
            Check::Rate => "rate",
            Check::Moments => "moments",
            Check::DecayProbe => "decay_probe",
        }
    }

    /// Needs replicate sets of `S_n/√n`.
    pub fn is_statistical(self) -> bool {
        matches!(self, Check::Clt | Check::Rate | Check::Moments)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    #[serde(default = "schema_version")]
    pub schema: u32,
    pub name: String,
    pub spec: ProcessSpec,
    #[serde(default)]
    pub n_grid: Vec<usize>,
    #[serde(default)]
    pub replicates: usize,
    #[serde(with = "weakdep::seed")]
    pub master_seed: u64,
    #[serde(default)]
    pub checks: Vec<Check>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub theory: Option<Theory>,
    /// Moment order Δ of the moment-scaling check.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub probe: Option<ProbeConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output_dir: Option<PathBuf>,
}

/// Theoretical side of the experiment.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Theory {
    pub m: f64,
    pub family: DependenceFamily,
    pub decay_exp: f64,
    /// `E|X₀|^m`, needed by the λ covariance bound.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mu: Option<f64>,
    /// Known law of the process's own dependence coefficients.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coefficients: Option<DecayLaw<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub heredity: Option<HeredityConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub shift: Option<ShiftConfig>,
}

/// Shift weights `b_j` of a Bernoulli shift.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "source", rename_all = "snake_case", deny_unknown_fields)]
pub enum WeightsConfig {
    /// Symmetric weights `b_0, b_1, …` (the same value at `±j`).
    Table { values: Vec<f64> },
    /// Weights at lags `start, start+1, …`, folded by `max(|b_j|, |b_{−j}|)`.
    TwoSided { start: i64, values: Vec<f64> },
    Law {
        law: DecayLaw<f64>,
        #[serde(default = "default_horizon")]
        horizon: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HeredityConfig {
    pub weights: WeightsConfig,
    #[serde(default)]
    pub ell: f64,
    /// Input moment order; absent means bounded inputs (`m' = ∞`).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m_prime: Option<f64>,
    pub y_norm1: f64,
    #[serde(default)]
    pub y_normmp: f64,
    /// Dependence coefficients of the input.
    pub input: CoefficientBound<f64>,
    /// Largest lag of the tabulated curve.
    #[serde(default = "default_lags")]
    pub lags: u64,
}

/// Shapes and exponents for the envelope and Donsker classification.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ShiftConfig {
    pub b_kind: DecayShape,
    pub input_kind: DecayShape,
    pub family: DependenceFamily,
    pub b_exp: f64,
    pub input_exp: f64,
    #[serde(default)]
    pub ell: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m_prime: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProbeConfig {
    #[serde(default = "default_probe_n")]
    pub n: usize,
    #[serde(default = "default_probe_gaps")]
    pub gaps: Vec<usize>,
    #[serde(default = "default_block")]
    pub block: usize,
    #[serde(default = "default_max_lag")]
    pub max_lag: usize,
}

impl Default for ProbeConfig {
    fn default() -> Self {
        ProbeConfig {
            n: default_probe_n(),
            gaps: default_probe_gaps(),
            block: default_block(),
            max_lag: default_max_lag(),
        }
    }
}

fn schema_version() -> u32 {
    SCHEMA_VERSION
}

fn default_horizon() -> usize {
    DEFAULT_WEIGHT_HORIZON
}

fn default_lags() -> u64 {
    64
}

fn default_probe_n() -> usize {
    1 << 17
}

fn default_probe_gaps() -> Vec<usize> {
    (0..=16).collect()
}

fn default_block() -> usize {
    1
}

fn default_max_lag() -> usize {
    32
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: ExperimentConfig = serde_json::from_str(text)?;
        if cfg.schema != SCHEMA_VERSION {
            return config_err(format!(
                "unsupported schema {} (expected {SCHEMA_VERSION})",
                cfg.schema
            ));
        }
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::ReadConfig {
            path: path.to_owned(),
            source,
        })?;
        Self::from_json(&text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    /// Replaces the master seed and the process seed.
    pub fn override_seed(&mut self, seed: u64) {
        self.master_seed = seed;
        self.spec.seed = seed;
    }

    pub fn probe(&self) -> ProbeConfig {
        self.probe.clone().unwrap_or_default()
    }

    /// Checks the fields that `checks` depend on.
    pub fn validate_for(&self, checks: &[Check]) -> Result<()> {
        if self.schema != SCHEMA_VERSION {
            return config_err(format!("unsupported schema {}", self.schema));
        }
        if self.name.trim().is_empty() {
            return config_err("name must not be empty");
        }
        if self.n_grid.first() == Some(&0) {
            return config_err("n_grid entries must be positive");
        }
        if self.n_grid.windows(2).any(|w| w[0] >= w[1]) {
            return config_err("n_grid must be strictly increasing");
        }
        for (i, c) in checks.iter().enumerate() {
            if checks[..i].contains(c) {
                return config_err(format!("check {} listed twice", c.name()));
            }
        }
        if checks.iter().any(|c| c.is_statistical()) {
            if self.n_grid.is_empty() {
                return config_err("statistical checks need a nonempty n_grid");
            }
            if self.replicates < MIN_REPLICATES {
                return config_err(format!(
                    "statistical checks need at least {MIN_REPLICATES} replicates, got {}",
                    self.replicates
                ));
            }
        }
        if checks.contains(&Check::Bounds) && self.theory.is_none() {
            return config_err("the bounds check needs a theory block");
        }
        if checks.contains(&Check::Moments) && self.delta.is_none() && self.theory.is_none() {
            return config_err("the moments check needs delta or a theory block");
        }
        if let Some(d) = self.delta {
            if !(d > 2.0) {
                return config_err(format!("Δ must exceed 2, got {d}"));
            }
        }
        if checks.contains(&Check::DecayProbe) {
            let p = self.probe();
            if p.block == 0 || p.max_lag == 0 {
                return config_err("probe block and max_lag must be positive");
            }
        }
        if let Some(t) = &self.theory {
            if !(t.m > 2.0) {
                return config_err(format!("theory m must exceed 2, got {}", t.m));
            }
            if let Some(h) = &t.heredity {
                h.to_problem()?;
            }
        }
        Ok(())
    }
}

impl HeredityConfig {
    pub fn to_problem(&self) -> Result<HeredityProblem<f64>> {
        let b = match &self.weights {
            WeightsConfig::Table { values } => ShiftWeights::from_table(values.clone())?,
            WeightsConfig::TwoSided { start, values } => ShiftWeights::from_two_sided(*start, values)?,
            WeightsConfig::Law { law, horizon } => ShiftWeights::from_law(law.clone(), *horizon)?,
        };
        let prob = HeredityProblem {
            b,
            ell: self.ell,
            m_prime: self.m_prime.unwrap_or(f64::INFINITY),
            y_norm1: self.y_norm1,
            y_normmp: self.y_normmp,
            input_coeff: self.input.clone(),
        };
        prob.validate()?;
        Ok(prob)
    }
}
