use std::ops::Range;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::compensated_sum;
use crate::error::{invalid, Result};
use crate::models::{PreparedProcess, ProcessSpec};
use crate::rng::Substream;

/// `R` independent realizations of `S_n/√n`.
///
/// Replicate `i` is drawn from `Substream::for_replicate(master_seed, n, i)`,
/// so the set depends on `(spec, n, R, master_seed)` only.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReplicateSet {
    pub n: usize,
    pub values: Vec<f64>,
    #[serde(with = "crate::seed")]
    pub master_seed: u64,
    pub substreams: Range<u64>,
}

impl ReplicateSet {
    pub fn replicates(&self) -> usize {
        self.values.len()
    }

    pub fn substream_ids(&self) -> impl Iterator<Item = u64> {
        self.substreams.clone()
    }

    pub fn kolmogorov_distance(&self, sigma: f64) -> Result<f64> {
        super::kolmogorov_distance(&self.values, sigma)
    }
}

pub fn replicate_partial_sums(
    spec: &ProcessSpec,
    n: usize,
    replicates: usize,
    master_seed: u64,
) -> Result<ReplicateSet> {
    let prepared = PreparedProcess::new(spec)?;
    replicate_prepared(&prepared, n, replicates, master_seed)
}

/// Parallel over replicates on the current rayon pool; results are
/// collected in replicate order.
pub fn replicate_prepared(
    process: &PreparedProcess,
    n: usize,
    replicates: usize,
    master_seed: u64,
) -> Result<ReplicateSet> {
    if replicates < 2 {
        return invalid("a replicate set needs at least 2 replicates");
    }
    if n == 0 {
        return invalid("path length must be at least 1");
    }
    let scale = (n as f64).sqrt();
    let values = (0..replicates as u64)
        .into_par_iter()
        .map(|i| {
            let sub = Substream::for_replicate(master_seed, n as u64, i);
            compensated_sum(process.generate(n, &sub)) / scale
        })
        .collect();
    Ok(ReplicateSet {
        n,
        values,
        master_seed,
        substreams: 0..replicates as u64,
    })
}

/// Monte Carlo estimate of `E|S_n|^Δ / n^{Δ/2}` with its standard error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MomentRatio {
    pub n: usize,
    pub ratio: f64,
    pub stderr: f64,
}

impl MomentRatio {
    /// Estimate from an existing replicate set of `S_n/√n` values.
    pub fn from_set(set: &ReplicateSet, delta: f64) -> Result<Self> {
        if !(delta > 2.0) {
            return invalid("moment order Delta must exceed 2");
        }
        let powers: Vec<f64> = set.values.iter().map(|s| s.abs().powf(delta)).collect();
        let r = powers.len() as f64;
        let ratio = compensated_sum(powers.iter().copied()) / r;
        let var = powers.iter().map(|p| (p - ratio).powi(2)).sum::<f64>() / (r - 1.0);
        Ok(MomentRatio {
            n: set.n,
            ratio,
            stderr: (var / r).sqrt(),
        })
    }
}

pub fn moment_ratio(
    process: &PreparedProcess,
    delta: f64,
    n_grid: &[usize],
    replicates: usize,
    master_seed: u64,
) -> Result<Vec<MomentRatio>> {
    if !(delta > 2.0) {
        return invalid("moment order Delta must exceed 2");
    }
    n_grid
        .iter()
        .map(|&n| {
            let set = replicate_prepared(process, n, replicates, master_seed)?;
            MomentRatio::from_set(&set, delta)
        })
        .collect()
}
