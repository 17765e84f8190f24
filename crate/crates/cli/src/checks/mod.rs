//! The individual checks. They share a [`Context`] that caches the prepared
//! process, replicate sets per `n` and the CLT distance table.

mod bounds;
mod clt;
mod moments;
mod probe;

use std::collections::BTreeMap;

use weakdep::bounds::{moment_exponent, rate_profile, RateProfile};
use weakdep::empirics::{replicate_prepared, ReplicateSet};
use weakdep::models::PreparedProcess;

use crate::config::{Check, ExperimentConfig};
use crate::error::Result;
use crate::report::{Cell, CheckOutput};

pub use bounds::theory_block;
pub use clt::{clt_verdict, rate_verdict, CltData, CltRow, SigmaSource};

/// Stream of the pilot path used to estimate σ when no closed form exists.
pub const PILOT_STREAM: u64 = u64::MAX - 1;
/// Stream of the long path used by the covariance-decay probe.
pub const PROBE_STREAM: u64 = u64::MAX - 2;
/// Variance below which the Gaussian limit is treated as degenerate.
pub const SIGMA2_TOL: f64 = 1e-12;
/// Largest `|slope|` of the log moment ratio accepted as flat.
pub const MOMENT_SLOPE_TOL: f64 = 0.05;

pub struct Context<'a> {
    pub cfg: &'a ExperimentConfig,
    process: Option<PreparedProcess>,
    sets: BTreeMap<usize, ReplicateSet>,
    clt: Option<CltData>,
}

impl<'a> Context<'a> {
    pub fn new(cfg: &'a ExperimentConfig) -> Self {
        Context {
            cfg,
            process: None,
            sets: BTreeMap::new(),
            clt: None,
        }
    }

    pub fn process(&mut self) -> Result<&PreparedProcess> {
        if self.process.is_none() {
            self.process = Some(PreparedProcess::new(&self.cfg.spec)?);
        }
        Ok(self.process.as_ref().expect("just set"))
    }

    pub fn replicate_set(&mut self, n: usize) -> Result<&ReplicateSet> {
        if !self.sets.contains_key(&n) {
            let (r, seed) = (self.cfg.replicates, self.cfg.master_seed);
            let set = replicate_prepared(self.process()?, n, r, seed)?;
            self.sets.insert(n, set);
        }
        Ok(&self.sets[&n])
    }

    /// `A` or `B` of the theory block, when it exists.
    pub fn moment_exponent(&self) -> Option<f64> {
        let t = self.cfg.theory.as_ref()?;
        moment_exponent(t.m, t.family, t.decay_exp).ok()
    }

    /// Rate profile of the theory block when its hypotheses hold.
    pub fn profile(&self) -> Option<RateProfile<f64>> {
        let t = self.cfg.theory.as_ref()?;
        rate_profile(t.m, t.family, t.decay_exp).ok()
    }

    pub fn run(&mut self, check: Check) -> Result<CheckOutput> {
        match check {
            Check::Bounds => bounds::run(self),
            Check::Clt => clt::run_clt(self),
            Check::Rate => clt::run_rate(self),
            Check::Moments => moments::run(self),
            Check::DecayProbe => probe::run(self),
        }
    }
}

/// Provenance columns shared by the replicate tables.
pub const PROVENANCE: [&str; 5] = ["n", "replicates", "master_seed", "substream_first", "substream_last"];

pub fn provenance(set: &ReplicateSet) -> Vec<Cell> {
    vec![
        set.n.into(),
        set.replicates().into(),
        set.master_seed.to_string().into(),
        set.substreams.start.into(),
        (set.substreams.end - 1).into(),
    ]
}

pub fn columns(extra: &[&'static str]) -> Vec<&'static str> {
    PROVENANCE.iter().chain(extra).copied().collect()
}
