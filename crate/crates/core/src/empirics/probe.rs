use super::compensated_sum;
use crate::error::{invalid, Result};

/// Empirical covariance between clamped block averages separated by each gap.
///
/// For gap `r` the statistic pairs `f(X_t..X_{t+B−1})` with
/// `f(X_{t+B+r}..X_{t+2B+r−1})` over every admissible `t`, where `f` clamps
/// the block average to `[−1, 1]`. Returns `(r, |ĉov|)`.
pub fn cov_decay_probe(path: &[f64], gaps: &[usize], block: usize) -> Result<Vec<(usize, f64)>> {
    if block == 0 {
        return invalid("block size must be at least 1");
    }
    let n = path.len();
    let max_gap = gaps.iter().copied().max().unwrap_or(0);
    if 2 * block + max_gap > n {
        return invalid(format!(
            "path of length {n} too short for block {block} and gap {max_gap}"
        ));
    }
    // f on every block start
    let blocks = n - block + 1;
    let mut stat = Vec::with_capacity(blocks);
    for t in 0..blocks {
        let avg = compensated_sum(path[t..t + block].iter().copied()) / block as f64;
        stat.push(avg.clamp(-1.0, 1.0));
    }
    let out = gaps
        .iter()
        .map(|&r| {
            let count = n - 2 * block - r + 1;
            let lead = &stat[..count];
            let lag = &stat[block + r..block + r + count];
            let c = count as f64;
            let ma = lead.iter().sum::<f64>() / c;
            let mb = lag.iter().sum::<f64>() / c;
            let cov = lead
                .iter()
                .zip(lag)
                .map(|(a, b)| (a - ma) * (b - mb))
                .sum::<f64>()
                / c;
            (r, cov.abs())
        })
        .collect();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_path_has_no_covariance() {
        let out = cov_decay_probe(&[0.4; 50], &[0, 1, 5, 10], 3).unwrap();
        assert!(out.iter().all(|&(_, c)| c < 1e-15));
    }

    #[test]
    fn short_path_rejected() {
        assert!(cov_decay_probe(&[0.0; 10], &[5], 3).is_err());
        assert!(cov_decay_probe(&[0.0; 11], &[5], 3).is_ok());
        assert!(cov_decay_probe(&[0.0; 11], &[1], 0).is_err());
    }

    #[test]
    fn alternating_path_lag_structure() {
        let path: Vec<f64> = (0..200).map(|i| if i % 2 == 0 { 0.5 } else { -0.5 }).collect();
        let out = cov_decay_probe(&path, &[0, 1], 1).unwrap();
        // gap 0 pairs t with t+1: anti-correlated; gap 1 pairs t with t+2
        assert!((out[0].1 - 0.25).abs() < 1e-4);
        assert!((out[1].1 - 0.25).abs() < 1e-4);
    }
}
