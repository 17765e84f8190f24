use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

/// Least-squares power law `distance ≈ e^{intercept} · n^{slope}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RateFit {
    pub points: Vec<(f64, f64)>,
    pub slope: f64,
    pub intercept: f64,
    pub slope_stderr: f64,
}

impl RateFit {
    /// Fitted decay rate `−slope`.
    pub fn rate(&self) -> f64 {
        -self.slope
    }
}

/// Ordinary least squares on `(log n, log distance)`.
pub fn fit_rate(points: &[(f64, f64)]) -> Result<RateFit> {
    if points.len() < 3 {
        return invalid(format!("rate fit needs at least 3 points, got {}", points.len()));
    }
    if let Some(p) = points.iter().find(|(n, d)| !(*n > 0.0) || !(*d > 0.0)) {
        return invalid(format!("rate fit needs positive n and distance, got {p:?}"));
    }
    let xs: Vec<f64> = points.iter().map(|p| p.0.ln()).collect();
    let ys: Vec<f64> = points.iter().map(|p| p.1.ln()).collect();
    let k = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / k;
    let my = ys.iter().sum::<f64>() / k;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    if sxx == 0.0 {
        return invalid("rate fit needs at least two distinct n");
    }
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let rss: f64 = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| (y - intercept - slope * x).powi(2))
        .sum();
    let slope_stderr = (rss / (k - 2.0) / sxx).sqrt();
    Ok(RateFit {
        points: points.to_vec(),
        slope,
        intercept,
        slope_stderr,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_power_laws() {
        let pts: Vec<(f64, f64)> = (8..14)
            .map(|e| {
                let n = (1u64 << e) as f64;
                (n, n.powf(-0.5))
            })
            .collect();
        let fit = fit_rate(&pts).unwrap();
        assert!((fit.slope + 0.5).abs() < 1e-12);
        assert!(fit.slope_stderr < 1e-6);

        let pts: Vec<(f64, f64)> = [100.0, 1000.0, 5000.0, 20000.0]
            .iter()
            .map(|&n: &f64| (n, 7.0 * n.powf(-0.119)))
            .collect();
        let fit = fit_rate(&pts).unwrap();
        assert!((fit.slope + 0.119).abs() < 1e-12);
        assert!((fit.intercept - 7f64.ln()).abs() < 1e-10);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(fit_rate(&[(1.0, 1.0), (2.0, 0.5)]).is_err());
        assert!(fit_rate(&[(1.0, 1.0), (2.0, 0.0), (3.0, 0.1)]).is_err());
        assert!(fit_rate(&[(2.0, 1.0), (2.0, 0.5), (2.0, 0.1)]).is_err());
    }
}
