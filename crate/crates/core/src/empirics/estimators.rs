use crate::error::{invalid, Result};

use super::compensated_sum;

pub fn mean(values: &[f64]) -> f64 {
    compensated_sum(values.iter().copied()) / values.len() as f64
}

/// `W_n(t) = n^{-1/2} Σ_{i=1}^{⌊nt⌋} X_i` on each grid point.
pub fn partial_sum_process(path: &[f64], grid: &[f64]) -> Result<Vec<f64>> {
    if path.is_empty() {
        return invalid("partial sums need a nonempty path");
    }
    if let Some(t) = grid.iter().find(|t| !(0.0..=1.0).contains(*t)) {
        return invalid(format!("grid point {t} outside [0, 1]"));
    }
    let n = path.len();
    let scale = (n as f64).sqrt();
    let mut order: Vec<usize> = (0..grid.len()).collect();
    order.sort_by(|&a, &b| grid[a].total_cmp(&grid[b]));
    let mut out = vec![0.0; grid.len()];
    let (mut sum, mut comp, mut upto) = (0.0f64, 0.0f64, 0usize);
    for idx in order {
        let k = ((n as f64 * grid[idx]).floor() as usize).min(n);
        while upto < k {
            let v = path[upto];
            let t = sum + v;
            if sum.abs() >= v.abs() {
                comp += (sum - t) + v;
            } else {
                comp += (v - t) + sum;
            }
            sum = t;
            upto += 1;
        }
        out[idx] = (sum + comp) / scale;
    }
    Ok(out)
}

/// Biased (`1/n`) sample autocovariance at lag `k`.
pub fn autocovariance(path: &[f64], k: usize) -> Result<f64> {
    let n = path.len();
    if k >= n {
        return invalid(format!("lag {k} must be below the path length {n}"));
    }
    let m = mean(path);
    Ok(lag_product(path, m, k) / n as f64)
}

/// `γ̂(0), …, γ̂(max_lag)`.
pub fn autocovariances(path: &[f64], max_lag: usize) -> Result<Vec<f64>> {
    let n = path.len();
    if max_lag >= n {
        return invalid(format!("lag {max_lag} must be below the path length {n}"));
    }
    let m = mean(path);
    Ok((0..=max_lag)
        .map(|k| lag_product(path, m, k) / n as f64)
        .collect())
}

fn lag_product(path: &[f64], m: f64, k: usize) -> f64 {
    compensated_sum(
        path.iter()
            .zip(&path[k..])
            .map(|(a, b)| (a - m) * (b - m)),
    )
}

/// Default taper window `⌈n^{1/3}⌉`.
pub fn default_window(n: usize) -> usize {
    let p = (n as f64).cbrt().ceil() as usize;
    // guard against cbrt rounding just above an exact cube
    if p > 1 && (p - 1).pow(3) >= n {
        p - 1
    } else {
        p.max(1)
    }
}

/// Bartlett-tapered long-run variance `γ̂(0) + 2 Σ_{i<p} (1 − i/p) γ̂(i)`.
pub fn longrun_variance(path: &[f64], p: usize) -> Result<f64> {
    if p < 1 || p > path.len() {
        return invalid(format!("window p = {p} outside [1, {}]", path.len()));
    }
    let gamma = autocovariances(path, p - 1)?;
    let pf = p as f64;
    let tail = compensated_sum(
        gamma
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, g)| (1.0 - i as f64 / pf) * g),
    );
    Ok(gamma[0] + 2.0 * tail)
}
