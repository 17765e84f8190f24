//! Monte Carlo verification tools: partial-sum processes, covariance and
//! long-run variance estimators, replicated normalized sums, the exact
//! Kolmogorov distance to a centered Gaussian, moment scaling, power-law
//! rate regression and a covariance-decay probe.

mod estimators;
mod kolmogorov;
mod probe;
mod regression;
mod replicates;

pub use estimators::{
    autocovariance, autocovariances, default_window, longrun_variance, mean, partial_sum_process,
};
pub use kolmogorov::{
    kolmogorov_distance, kolmogorov_noise_floor, normal_cdf, KOLMOGOROV_Q99,
};
pub use probe::cov_decay_probe;
pub use regression::{fit_rate, RateFit};
pub use replicates::{
    moment_ratio, replicate_partial_sums, replicate_prepared, MomentRatio, ReplicateSet,
};

/// Neumaier-compensated sum.
pub fn compensated_sum<I: IntoIterator<Item = f64>>(values: I) -> f64 {
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    }
    sum + comp
}

#[cfg(test)]
mod tests {
    use super::compensated_sum;

    #[test]
    fn compensation_recovers_lost_bits() {
        let v = [1.0, 1e100, 1.0, -1e100];
        assert_eq!(compensated_sum(v), 2.0);
        let naive: f64 = v.iter().sum();
        assert_eq!(naive, 0.0);
    }
}
