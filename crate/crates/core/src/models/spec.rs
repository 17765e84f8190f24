//! Serializable recipes for stationary models.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::innovation::InnovationSpec;
use super::volterra::ChaosTerm;
use super::window::CoeffSpec;

/// Default size of the auxiliary Monte Carlo that centers `|Σ α_i Y_{t−i}|`.
pub const DEFAULT_CENTERING_MC: usize = 100_000;

/// Full recipe for one stationary model.
///
/// `seed` drives [`crate::models::simulate`] and the model-level auxiliary
/// Monte Carlo (absolute-value centering). When the spec is nested as the
/// input of another model its draws come from the parent's substream.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProcessSpec {
    #[serde(flatten)]
    pub model: Model,
    #[serde(with = "crate::seed", default)]
    pub seed: u64,
}

/// Input of a filter-type model: iid innovations or another process.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Input {
    Innovation(InnovationSpec),
    Process(Box<ProcessSpec>),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum Model {
    Iid {
        innovation: InnovationSpec,
    },
    /// `X_t = Σ α_i Y_{t−i}`.
    Linear {
        coefficients: CoeffSpec,
        input: Input,
    },
    /// `|Σ α_i Y_{t−i}| − E|Σ α_i Y_{−i}|`.
    LinearAbs {
        coefficients: CoeffSpec,
        input: Input,
        #[serde(default = "default_centering")]
        centering_mc: usize,
    },
    /// `Y_t = ξ_t (a + Σ_{j≥1} a_j Y_{t−j})`.
    LarchCausal {
        intercept: f64,
        coefficients: CoeffSpec,
        innovation: InnovationSpec,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        burn_in: Option<usize>,
        /// Moment order used in the contraction check `‖ξ‖_m Σ|a_j| < 1`.
        #[serde(default = "default_moment_order")]
        moment_order: f64,
    },
    /// `Y_t = ξ_t (a + Σ_{j≠0} a_j Y_{t−j})` with bounded `ξ`.
    LarchNoncausal {
        intercept: f64,
        coefficients: CoeffSpec,
        innovation: InnovationSpec,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        picard_iters: Option<usize>,
    },
    Volterra {
        chaos: Vec<ChaosTerm>,
        input: Input,
        lag_window: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        moment_check: Option<MomentCheck>,
    },
    /// `Y_n = a Y_{n−1} + ξ_n`.
    MarkovAr {
        coefficient: f64,
        innovation: InnovationSpec,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        burn_in: Option<usize>,
    },
}

/// Declared moments for a Volterra model: target order `m` of the output
/// and, when the input is a process, the input moment order `m'`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MomentCheck {
    pub m: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m_prime: Option<f64>,
}

fn default_centering() -> usize {
    DEFAULT_CENTERING_MC
}

fn default_moment_order() -> f64 {
    2.0
}

impl ProcessSpec {
    pub fn new(model: Model, seed: u64) -> Self {
        ProcessSpec { model, seed }
    }

    pub fn iid(innovation: InnovationSpec, seed: u64) -> Self {
        ProcessSpec::new(Model::Iid { innovation }, seed)
    }

    /// Short hex digest of the canonical JSON form.
    pub fn digest(&self) -> String {
        let json = serde_json::to_vec(self).expect("process spec serializes");
        let hash = Sha256::digest(&json);
        hex::encode(&hash[..8])
    }

    pub fn family_name(&self) -> &'static str {
        match self.model {
            Model::Iid { .. } => "iid",
            Model::Linear { .. } => "linear",
            Model::LinearAbs { .. } => "linear_abs",
            Model::LarchCausal { .. } => "larch_causal",
            Model::LarchNoncausal { .. } => "larch_noncausal",
            Model::Volterra { .. } => "volterra",
            Model::MarkovAr { .. } => "markov_ar",
        }
    }
}
