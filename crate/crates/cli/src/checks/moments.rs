//! Flatness of `E|S_n|^Δ / n^{Δ/2}` across the `n` grid.

use serde_json::json;
use weakdep::empirics::{fit_rate, MomentRatio};

use super::{columns, provenance, Context, MOMENT_SLOPE_TOL};
use crate::config::Check;
use crate::error::{config_err, Result};
use crate::report::{CheckOutput, Table, Verdict};

/// Δ from the config, else `2 + 0.9·A` (or `B`) from the theory block.
pub fn resolve_delta(explicit: Option<f64>, exponent: Option<f64>) -> Result<f64> {
    let delta = match (explicit, exponent) {
        (Some(d), _) => d,
        (None, Some(a)) => 2.0 + 0.9 * a,
        (None, None) => return config_err("Δ is not set and cannot be derived from the theory block"),
    };
    if !(delta > 2.0) {
        return config_err(format!("Δ must exceed 2, got {delta}"));
    }
    if let Some(a) = exponent {
        if !(delta - 2.0 < a) {
            return config_err(format!(
                "Δ = {delta} is inadmissible: Δ − 2 must stay below the moment exponent {a}"
            ));
        }
    }
    Ok(delta)
}

pub fn run(ctx: &mut Context) -> Result<CheckOutput> {
    let exponent = ctx.moment_exponent();
    let delta = resolve_delta(ctx.cfg.delta, exponent)?;
    let mut table = Table::new(
        "moments.csv",
        &columns(&["delta", "ratio", "stderr"]),
    );
    let mut points = Vec::new();
    for &n in &ctx.cfg.n_grid.clone() {
        let set = ctx.replicate_set(n)?;
        let m = MomentRatio::from_set(set, delta)?;
        let mut cells = provenance(set);
        cells.extend([delta.into(), m.ratio.into(), m.stderr.into()]);
        table.push(cells);
        points.push(m);
    }
    let pairs: Vec<(f64, f64)> = points.iter().map(|m| (m.n as f64, m.ratio)).collect();
    if pairs.len() < 3 {
        return Ok(CheckOutput {
            check: Check::Moments,
            verdict: Verdict::Inconclusive,
            summary: json!({ "delta": delta, "ratios": points }),
            tables: vec![table],
            diagnostic: Some("slope needs at least 3 grid points".into()),
        });
    }
    let fit = fit_rate(&pairs)?;
    let bounded = fit.slope.abs() <= MOMENT_SLOPE_TOL;
    Ok(CheckOutput {
        check: Check::Moments,
        verdict: if bounded { Verdict::Pass } else { Verdict::Fail },
        summary: json!({
            "delta": delta,
            "delta_source": if ctx.cfg.delta.is_some() { "config" } else { "theory" },
            "ratios": points,
            "ratio_slope": fit.slope,
            "ratio_slope_stderr": fit.slope_stderr,
            "moment_slope": fit.slope + delta / 2.0,
            "conclusion": if bounded { "bounded, consistent with the moment bound" } else { "ratio drifts with n" },
        }),
        tables: vec![table],
        diagnostic: (!bounded).then(|| format!("log-ratio slope {:.4} exceeds ±{MOMENT_SLOPE_TOL}", fit.slope)),
    })
}
