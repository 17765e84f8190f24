//! Kolmogorov distance of `S_n/√n` to its Gaussian limit, and the power-law
//! fit of those distances.

use serde::Serialize;
use serde_json::json;
use weakdep::empirics::{default_window, fit_rate, kolmogorov_noise_floor, longrun_variance};
use weakdep::rng::Substream;
use weakdep::Error;

use super::{columns, provenance, Context, PILOT_STREAM, SIGMA2_TOL};
use crate::config::Check;
use crate::error::Result;
use crate::report::{Cell, CheckOutput, Table, Verdict};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SigmaSource {
    Analytic,
    /// Tapered estimate from an independent path of this length.
    Pilot { n: usize, window: usize },
}

#[derive(Debug, Clone, Serialize)]
pub struct CltRow {
    pub n: usize,
    pub distance: f64,
    pub noise_floor: f64,
    #[serde(skip)]
    pub provenance: Vec<Cell>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CltData {
    pub sigma: f64,
    pub sigma_source: SigmaSource,
    pub rows: Vec<CltRow>,
}

fn limit_sigma(ctx: &mut Context) -> Result<(f64, SigmaSource)> {
    let n_max = *ctx.cfg.n_grid.last().expect("validated n_grid");
    let seed = ctx.cfg.master_seed;
    let process = ctx.process()?;
    let (sigma2, source) = match process.analytic_long_run_variance() {
        Some(v) => (v, SigmaSource::Analytic),
        None => {
            let n = 4 * n_max;
            let window = default_window(n);
            let path = process.generate(n, &Substream::new(seed, PILOT_STREAM));
            (longrun_variance(&path, window)?, SigmaSource::Pilot { n, window })
        }
    };
    if !(sigma2 > SIGMA2_TOL) {
        return Err(Error::Degenerate(format!(
            "degenerate sigma: long-run variance {sigma2:e} is not above {SIGMA2_TOL:e}"
        ))
        .into());
    }
    Ok((sigma2.sqrt(), source))
}

pub fn clt_data<'c>(ctx: &'c mut Context) -> Result<&'c CltData> {
    if ctx.clt.is_none() {
        let (sigma, sigma_source) = limit_sigma(ctx)?;
        let mut rows = Vec::new();
        for &n in &ctx.cfg.n_grid.clone() {
            let set = ctx.replicate_set(n)?;
            rows.push(CltRow {
                n,
                distance: set.kolmogorov_distance(sigma)?,
                noise_floor: kolmogorov_noise_floor(set.replicates()),
                provenance: provenance(set),
            });
        }
        ctx.clt = Some(CltData {
            sigma,
            sigma_source,
            rows,
        });
    }
    Ok(ctx.clt.as_ref().expect("just set"))
}

/// Trend verdict on distances along an increasing `n` grid.
///
/// An increase by more than the noise floor counts as a violation; two
/// violations fail. Otherwise the check passes when the last distance is
/// within twice the floor, is inconclusive while still decreasing from
/// above it, and fails when no decrease is visible.
pub fn clt_verdict(distances: &[f64], floor: f64) -> (Verdict, usize) {
    let violations = distances.windows(2).filter(|w| w[1] > w[0] + floor).count();
    let (Some(&first), Some(&last)) = (distances.first(), distances.last()) else {
        return (Verdict::Inconclusive, 0);
    };
    let verdict = if violations >= 2 {
        Verdict::Fail
    } else if last <= 2.0 * floor {
        Verdict::Pass
    } else if last < first - floor {
        Verdict::Inconclusive
    } else {
        Verdict::Fail
    };
    (verdict, violations)
}

pub fn run_clt(ctx: &mut Context) -> Result<CheckOutput> {
    let data = clt_data(ctx)?.clone();
    let mut table = Table::new(
        "clt.csv",
        &columns(&["sigma_used", "distance", "noise_floor"]),
    );
    for row in &data.rows {
        let mut cells = row.provenance.clone();
        cells.extend([data.sigma.into(), row.distance.into(), row.noise_floor.into()]);
        table.push(cells);
    }
    let distances: Vec<f64> = data.rows.iter().map(|r| r.distance).collect();
    let floor = data.rows.iter().map(|r| r.noise_floor).fold(0.0, f64::max);
    let (verdict, violations) = clt_verdict(&distances, floor);
    Ok(CheckOutput {
        check: Check::Clt,
        verdict,
        summary: json!({
            "sigma_used": data.sigma,
            "sigma_source": data.sigma_source,
            "rows": data.rows,
            "noise_floor": floor,
            "trend_violations": violations,
        }),
        tables: vec![table],
        diagnostic: None,
    })
}

/// One-sided comparison of a fitted rate with the theoretical `c′`.
/// Falling short is inconclusive: the theory bounds the rate from above
/// only asymptotically.
pub fn rate_verdict(fitted: f64, stderr: f64, c_prime: Option<f64>) -> Verdict {
    match c_prime {
        Some(c) if fitted >= c - 3.0 * stderr => Verdict::Pass,
        _ => Verdict::Inconclusive,
    }
}

pub fn run_rate(ctx: &mut Context) -> Result<CheckOutput> {
    let c_prime = ctx.profile().map(|p| p.c_prime);
    let data = clt_data(ctx)?.clone();
    let mut points = Table::new(
        "rate_points.csv",
        &columns(&["distance", "noise_floor", "usable"]),
    );
    let mut usable = Vec::new();
    for row in &data.rows {
        let ok = row.distance > row.noise_floor;
        if ok {
            usable.push((row.n as f64, row.distance));
        }
        let mut cells = row.provenance.clone();
        cells.extend([row.distance.into(), row.noise_floor.into(), ok.into()]);
        points.push(cells);
    }
    let floor = data.rows.iter().map(|r| r.noise_floor).fold(0.0, f64::max);
    if usable.len() < 3 {
        return Ok(CheckOutput {
            check: Check::Rate,
            verdict: Verdict::Inconclusive,
            summary: json!({
                "usable_points": usable.len(),
                "noise_floor": floor,
                "theory_c_prime": c_prime,
            }),
            tables: vec![points],
            diagnostic: Some(format!(
                "inconclusive at this R: {} point(s) above the noise floor {floor:.3e}, need 3",
                usable.len()
            )),
        });
    }
    let fit = fit_rate(&usable)?;
    let fitted = fit.rate();
    let verdict = rate_verdict(fitted, fit.slope_stderr, c_prime);
    let mut comparison = Table::new(
        "rate_fit.csv",
        &["points_used", "fitted_rate", "stderr", "intercept", "theory_c_prime", "verdict"],
    );
    comparison.push(vec![
        usable.len().into(),
        fitted.into(),
        fit.slope_stderr.into(),
        fit.intercept.into(),
        c_prime.map_or(Cell::from("none"), Cell::from),
        format!("{verdict:?}").to_lowercase().into(),
    ]);
    let diagnostic = match (verdict, c_prime) {
        (Verdict::Pass, _) => None,
        (_, None) => Some("no theoretical rate: theory block absent or hypotheses unmet".into()),
        (_, Some(c)) => Some(format!(
            "fitted rate {fitted:.4} below c' = {c:.4} minus 3 standard errors; noise floor {floor:.3e}"
        )),
    };
    Ok(CheckOutput {
        check: Check::Rate,
        verdict,
        summary: json!({
            "fit": fit,
            "fitted_rate": fitted,
            "theory_c_prime": c_prime,
            "usable_points": usable.len(),
            "noise_floor": floor,
        }),
        tables: vec![points, comparison],
        diagnostic,
    })
}
