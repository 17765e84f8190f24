//! Closed-form side: thresholds, rate constants, heredity curves, envelopes
//! and the Donsker requirement.

use serde_json::{json, Value};
use weakdep::bounds::{
    classify_decay, clt_condition, donsker_condition, moment_exponent, rate_profile, sigma2_bound,
    DonskerRequirement, MomentOrder,
};
use weakdep::{DependenceFamily, MomentSpec};

use super::probe::heredity_curve;
use super::Context;
use crate::config::{Check, ExperimentConfig, ShiftConfig, Theory};
use crate::error::Result;
use crate::report::{Cell, CheckOutput, Table, Verdict};

/// Theory section of the run report: CLT threshold and rate constants.
pub fn theory_block(cfg: &ExperimentConfig) -> Option<Value> {
    let t = cfg.theory.as_ref()?;
    let clt = clt_condition(&t.m, t.family, &t.decay_exp);
    Some(json!({
        "m": t.m,
        "family": t.family,
        "decay_exp": t.decay_exp,
        "clt": clt.as_ref().ok(),
        "clt_error": clt.as_ref().err().map(|e| e.to_string()),
        "rate_profile": rate_profile(t.m, t.family, t.decay_exp).ok(),
    }))
}

fn moment_order(m_prime: Option<f64>) -> MomentOrder<f64> {
    m_prime.map_or(MomentOrder::Infinite, MomentOrder::Finite)
}

fn envelope(s: &ShiftConfig) -> Value {
    let mo = moment_order(s.m_prime);
    match classify_decay(s.b_kind, s.input_kind, s.family, &s.b_exp, &s.input_exp, &s.ell, &mo) {
        Ok(env) => json!({
            "base": env.base(),
            "params": { "power": env.power, "log_power": env.log_power, "exp_rate": env.exp_rate },
            "decay_exponent": env.decay_exponent(),
        }),
        Err(e) => json!({ "error": e.to_string() }),
    }
}

/// Requirement, satisfaction and a short verdict string.
fn donsker(t: &Theory, s: &ShiftConfig) -> (Value, Option<bool>) {
    let mo = moment_order(s.m_prime);
    match donsker_condition(&s.ell, &s.b_exp, &t.m, &mo, s.b_kind, s.input_kind) {
        Ok(req) => {
            let ok = req.satisfied(&s.input_exp);
            let text = match (&req, ok) {
                (DonskerRequirement::Always, _) => "satisfied (geometric case)",
                (_, true) => "satisfied",
                (_, false) => "not satisfied",
            };
            (json!({ "requirement": req, "satisfied": ok, "verdict": text }), Some(ok))
        }
        Err(e) => (json!({ "error": e.to_string(), "verdict": "not applicable" }), None),
    }
}

pub fn run(ctx: &mut Context) -> Result<CheckOutput> {
    let t = ctx.cfg.theory.clone().expect("validated theory block");
    let clt = clt_condition(&t.m, t.family, &t.decay_exp)?;
    let exponent = moment_exponent(t.m, t.family, t.decay_exp).ok();
    let profile = rate_profile(t.m, t.family, t.decay_exp).ok();

    let mut summary = Table::new("bounds_summary.csv", &["quantity", "value"]);
    let mut row = |q: &str, v: Cell| summary.push(vec![q.into(), v]);
    row("family", t.family.name().into());
    row("m", t.m.into());
    row("decay_exp", t.decay_exp.into());
    row("clt_threshold", clt.threshold.into());
    row("clt_satisfied", clt.satisfied.into());
    if let Some(a) = exponent {
        row("moment_exponent", a.into());
    }
    if let Some(p) = &profile {
        row("c_star", p.c_star.into());
        row("c_prime", p.c_prime.into());
        row("a_star", p.a_star.into());
        row("b_star", p.b_star.into());
        row("delta_max", p.delta_max.into());
    }

    let sigma2 = match (&t.coefficients, t.family, t.mu) {
        (Some(law), DependenceFamily::Kappa | DependenceFamily::Lambda, mu)
            if mu.is_some() || t.family == DependenceFamily::Kappa =>
        {
            let moments = MomentSpec::new(t.m, mu.unwrap_or(1.0))?;
            let horizon = t.heredity.as_ref().map_or(64, |h| h.lags);
            let b = sigma2_bound(t.family, law, &moments, horizon)?;
            row("sigma2_bound_partial", b.partial_sum.into());
            Some(b)
        }
        _ => None,
    };

    let (shift_env, donsker_info, donsker_ok) = match &t.shift {
        Some(s) => {
            let env = envelope(s);
            let (d, ok) = donsker(&t, s);
            if let Some(p) = env["params"].as_object() {
                for (k, v) in p {
                    row(&format!("envelope_{k}"), v.as_f64().unwrap_or(f64::NAN).into());
                }
            }
            row("donsker", d["verdict"].as_str().unwrap_or("").into());
            (Some(env), Some(d), ok)
        }
        None => (None, None, Some(true)),
    };

    let mut tables = vec![summary];
    let heredity = match &t.heredity {
        Some(h) => {
            let curve = heredity_curve(h)?;
            let mut table = Table::new(
                "bounds_heredity.csv",
                &["k", "family", "value", "argmin_r", "up_to_constant"],
            );
            for (k, b) in &curve {
                table.push(vec![
                    (*k).into(),
                    h.input.family.name().into(),
                    b.value.into(),
                    b.argmin_r.into(),
                    b.up_to_constant.into(),
                ]);
            }
            tables.push(table);
            Some(json!({
                "family": h.input.family,
                "curve": curve.iter().map(|(k, b)| json!({"k": k, "bound": b})).collect::<Vec<_>>(),
            }))
        }
        None => None,
    };

    let verdict = if clt.satisfied && donsker_ok == Some(true) {
        Verdict::Pass
    } else {
        Verdict::Inconclusive
    };
    let diagnostic = match (clt.satisfied, donsker_ok) {
        (false, _) => Some(format!(
            "decay exponent {} does not exceed the CLT threshold {}",
            t.decay_exp, clt.threshold
        )),
        (true, Some(false)) => Some("Donsker requirement not satisfied".into()),
        (true, None) => Some("Donsker requirement not applicable to these parameters".into()),
        (true, Some(true)) => None,
    };
    Ok(CheckOutput {
        check: Check::Bounds,
        verdict,
        summary: json!({
            "clt": clt,
            "moment_exponent": exponent,
            "rate_profile": profile,
            "sigma2_bound": sigma2,
            "heredity": heredity,
            "envelope": shift_env,
            "donsker": donsker_info,
        }),
        tables,
        diagnostic,
    })
}
