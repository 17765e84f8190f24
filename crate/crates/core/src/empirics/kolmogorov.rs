use libm::erfc;

use crate::error::{Error, Result};

/// 0.99 quantile of the Kolmogorov distribution (limit law of `√R · D_R`).
pub const KOLMOGOROV_Q99: f64 = 1.6276;

/// Standard normal distribution function.
pub fn normal_cdf(x: f64) -> f64 {
    0.5 * erfc(-x / std::f64::consts::SQRT_2)
}

/// Monte Carlo noise floor of the Kolmogorov distance from `R` replicates:
/// the level that the pure sampling error exceeds with probability about 1%.
pub fn kolmogorov_noise_floor(replicates: usize) -> f64 {
    KOLMOGOROV_Q99 / (replicates as f64).sqrt()
}

/// Exact sup-distance between the empirical law of `values` and `N(0, σ²)`,
/// from the order statistics.
pub fn kolmogorov_distance(values: &[f64], sigma: f64) -> Result<f64> {
    if !(sigma > 0.0 && sigma.is_finite()) {
        return Err(Error::Degenerate(format!(
            "limit standard deviation must be positive, got {sigma}"
        )));
    }
    if values.is_empty() {
        return Err(Error::InvalidParameter("no replicate values".into()));
    }
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    let r = sorted.len() as f64;
    let d = sorted
        .iter()
        .enumerate()
        .map(|(i, &x)| {
            let phi = normal_cdf(x / sigma);
            let hi = (i + 1) as f64 / r - phi;
            let lo = phi - i as f64 / r;
            hi.abs().max(lo.abs())
        })
        .fold(0.0, f64::max);
    Ok(d)
}
