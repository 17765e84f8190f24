//! Covariance decay on one long path, compared with the summed covariance
//! bound when a coefficient law is known.

use serde_json::json;
use weakdep::bounds::{heredity_general, heredity_lipschitz, sigma2_bound};
use weakdep::empirics::{autocovariances, cov_decay_probe, default_window, longrun_variance};
use weakdep::rng::Substream;
use weakdep::{DecayLaw, DependenceFamily, MomentSpec};

use super::{Context, PROBE_STREAM};
use crate::config::{Check, HeredityConfig, Theory};
use crate::error::Result;
use crate::report::{Cell, CheckOutput, Table, Verdict};

/// Tabulated `λ(k)` / `η(k)` curve over `k = 0..=lags`.
pub fn heredity_curve(h: &HeredityConfig) -> Result<Vec<(u64, weakdep::bounds::HeredityBound<f64>)>> {
    let prob = h.to_problem()?;
    let family = h.input.family;
    (0..=h.lags)
        .map(|k| {
            let b = if h.ell == 0.0 {
                heredity_lipschitz(k, &prob, family)?
            } else {
                heredity_general(k, &prob, family)?
            };
            Ok((k, b))
        })
        .collect()
}

/// Least nonincreasing majorant of a curve, as a decay law.
fn majorant_law(values: &[f64]) -> Result<DecayLaw<f64>> {
    let mut table = values.to_vec();
    for i in (0..table.len().saturating_sub(1)).rev() {
        table[i] = table[i].max(table[i + 1]);
    }
    Ok(DecayLaw::tabulated(table)?)
}

/// Coefficient law of the observed process: given directly, or derived
/// from the heredity curve.
fn coefficient_law(t: &Theory) -> Result<Option<(DependenceFamily, DecayLaw<f64>, &'static str)>> {
    if let Some(law) = &t.coefficients {
        return Ok(Some((t.family, law.clone(), "theory.coefficients")));
    }
    if let Some(h) = &t.heredity {
        if h.input.family == t.family {
            let curve: Vec<f64> = heredity_curve(h)?.iter().map(|(_, b)| b.value).collect();
            return Ok(Some((t.family, majorant_law(&curve)?, "heredity curve")));
        }
    }
    Ok(None)
}

pub fn run(ctx: &mut Context) -> Result<CheckOutput> {
    let p = ctx.cfg.probe();
    let seed = ctx.cfg.master_seed;
    let path = ctx.process()?.generate(p.n, &Substream::new(seed, PROBE_STREAM));
    let n = path.len();

    let mut probe = Table::new(
        "probe.csv",
        &["n", "master_seed", "stream", "block", "gap", "abs_cov"],
    );
    for (gap, c) in cov_decay_probe(&path, &p.gaps, p.block)? {
        probe.push(vec![
            n.into(),
            seed.to_string().into(),
            PROBE_STREAM.into(),
            p.block.into(),
            gap.into(),
            c.into(),
        ]);
    }

    let gammas = autocovariances(&path, p.max_lag)?;
    let abs: Vec<f64> = gammas.iter().map(|g| g.abs()).collect();
    // Bartlett-type standard error of one autocovariance
    let sq: f64 = gammas[0] * gammas[0] + 2.0 * gammas[1..].iter().map(|g| g * g).sum::<f64>();
    let se_lag = (2.0 * sq / n as f64).sqrt();
    let window = default_window(n);
    let sigma2_hat = longrun_variance(&path, window)?;
    let analytic = ctx.process()?.analytic_long_run_variance();

    let law = match &ctx.cfg.theory {
        Some(t) => coefficient_law(t)?.map(|l| (t, l)),
        None => None,
    };
    let mut sums = Table::new(
        "decay_sums.csv",
        &["n", "master_seed", "stream", "horizon", "empirical_abs_sum", "stderr", "bound_sum", "within"],
    );
    let mut violations = 0usize;
    let mut source = None;
    let mut empirical = abs[0];
    for k in 0..=p.max_lag {
        if k > 0 {
            empirical += 2.0 * abs[k];
        }
        let se = (2 * k + 1) as f64 * se_lag;
        let bound = match &law {
            Some((t, (family, law, src))) => {
                source = Some(*src);
                let moments = MomentSpec::new(t.m, t.mu.unwrap_or(1.0))?;
                if *family == DependenceFamily::Lambda && t.mu.is_none() {
                    None
                } else {
                    sigma2_bound(*family, law, &moments, k as u64).ok().map(|b| b.partial_sum)
                }
            }
            None => None,
        };
        let within = bound.map(|b| empirical <= b + 3.0 * se);
        if within == Some(false) {
            violations += 1;
        }
        sums.push(vec![
            n.into(),
            seed.to_string().into(),
            PROBE_STREAM.into(),
            k.into(),
            empirical.into(),
            se.into(),
            bound.map_or(Cell::from("none"), Cell::from),
            within.map_or(Cell::from("none"), Cell::from),
        ]);
    }
    let compared = sums.rows.iter().any(|r| r[6] != Cell::from("none"));
    let verdict = match (compared, violations) {
        (false, _) => Verdict::Inconclusive,
        (true, 0) => Verdict::Pass,
        (true, _) => Verdict::Fail,
    };
    Ok(CheckOutput {
        check: Check::DecayProbe,
        verdict,
        summary: json!({
            "n": n,
            "stream": PROBE_STREAM,
            "block": p.block,
            "longrun_variance": sigma2_hat,
            "window": window,
            "analytic_longrun_variance": analytic,
            "bound_source": source,
            "violations": violations,
        }),
        tables: vec![probe, sums],
        diagnostic: match (compared, violations) {
            (false, _) => Some("no coefficient law with the required moments; bound not compared".into()),
            (true, 0) => None,
            (true, v) => Some(format!("{v} horizon(s) exceed the covariance bound by more than 3 SE")),
        },
    })
}
