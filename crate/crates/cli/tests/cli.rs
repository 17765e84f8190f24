use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command as Proc;

use serde_json::{json, Value};
use weakdep::empirics::fit_rate;
use weakdep_cli::checks::rate_verdict;
use weakdep_cli::{execute, Command, ExperimentConfig, RunOptions, Verdict};

const BIN: &str = env!("CARGO_BIN_EXE_weakdep");

fn workspace_file(rel: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..").join(rel)
}

fn config(v: Value) -> ExperimentConfig {
    ExperimentConfig::from_json(&v.to_string()).unwrap()
}

fn base(spec: Value) -> Value {
    json!({
        "schema": 1,
        "name": "t",
        "spec": spec,
        "n_grid": [8],
        "replicates": 100,
        "master_seed": "5",
    })
}

fn iid(law: Value) -> Value {
    json!({ "family": "iid", "innovation": law, "seed": "3" })
}

fn zero_linear() -> Value {
    json!({
        "family": "linear",
        "coefficients": { "source": "explicit", "start": 0, "values": [0.0, 0.0] },
        "input": { "innovation": { "law": "gaussian", "sd": 1.0 } },
    })
}

fn opts(dir: &Path) -> RunOptions {
    RunOptions {
        out: Some(dir.to_owned()),
        ..RunOptions::default()
    }
}

fn read_csv(path: &Path) -> Vec<Vec<String>> {
    let text = fs::read_to_string(path).unwrap();
    text.lines().skip(1).map(|l| l.split(',').map(str::to_owned).collect()).collect()
}

fn report(dir: &Path) -> Value {
    serde_json::from_str(&fs::read_to_string(dir.join("report.json")).unwrap()).unwrap()
}

#[test]
fn config_round_trip() {
    for name in ["iid_gaussian", "larch_causal", "linear_two_sided"] {
        let cfg = ExperimentConfig::load(&workspace_file(&format!("configs/{name}.json"))).unwrap();
        assert_eq!(ExperimentConfig::from_json(&cfg.to_json()).unwrap(), cfg, "{name}");
    }
    let mut v = base(iid(json!({"law": "rademacher"})));
    v["master_seed"] = json!("18446744073709551615");
    let cfg = config(v);
    assert_eq!(cfg.master_seed, u64::MAX);
    assert!(cfg.to_json().contains("\"18446744073709551615\""));
}

#[test]
fn config_rejections() {
    let mut v = base(iid(json!({"law": "rademacher"})));
    v["bogus"] = json!(1);
    assert!(ExperimentConfig::from_json(&v.to_string()).is_err());

    let mut v = base(iid(json!({"law": "rademacher"})));
    v["schema"] = json!(2);
    assert!(ExperimentConfig::from_json(&v.to_string()).is_err());

    let mut v = base(iid(json!({"law": "rademacher"})));
    v["n_grid"] = json!([16, 16]);
    assert!(config(v).validate_for(&[]).is_err());

    let mut v = base(iid(json!({"law": "rademacher"})));
    v["replicates"] = json!(99);
    let cfg = config(v);
    assert!(cfg.validate_for(&[weakdep_cli::Check::Clt]).is_err());
    assert!(cfg.validate_for(&[]).is_ok());
    assert!(cfg.validate_for(&[weakdep_cli::Check::Bounds]).is_err());
}

#[test]
fn simulate_examples() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = config(base(iid(json!({"law": "rademacher"}))));
    let a = execute(Command::Simulate, cfg.clone(), &opts(tmp.path())).unwrap();
    let rows = read_csv(&a.dir.join("path_n8.csv"));
    assert_eq!(rows.len(), 8);
    for (t, row) in rows.iter().enumerate() {
        assert_eq!(row[0], t.to_string());
        assert_eq!(row[1].parse::<f64>().unwrap().abs(), 1.0);
    }
    let b = execute(Command::Simulate, cfg, &opts(tmp.path())).unwrap();
    assert_ne!(a.dir, b.dir);
    assert_eq!(fs::read(a.dir.join("path_n8.csv")).unwrap(), fs::read(b.dir.join("path_n8.csv")).unwrap());
    let side: Value = serde_json::from_str(&fs::read_to_string(a.dir.join("simulate.json")).unwrap()).unwrap();
    assert_eq!(side["schema"], 1);
    assert_eq!(side["seed"], "3");
    assert_eq!(side["spec_digest"].as_str().unwrap().len(), 16);

    let zero = execute(Command::Simulate, config(base(zero_linear())), &opts(tmp.path())).unwrap();
    assert!(read_csv(&zero.dir.join("path_n8.csv")).iter().all(|r| r[1].parse::<f64>().unwrap() == 0.0));
}

fn bounds_config(theory: Value) -> ExperimentConfig {
    let mut v = base(iid(json!({"law": "rademacher"})));
    v["theory"] = theory;
    config(v)
}

#[test]
fn bounds_examples() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = bounds_config(json!({"m": 4.0, "family": "kappa", "decay_exp": 3.0}));
    let out = execute(Command::Bounds, cfg, &opts(tmp.path())).unwrap();
    assert_eq!(out.verdict, Verdict::Pass);
    let r = report(&out.dir);
    assert_eq!(r["schema"], 1);
    let res = &r["checks"][0]["result"];
    assert_eq!(res["clt"]["satisfied"], true);
    assert!((res["moment_exponent"].as_f64().unwrap() - 0.618_033_988_749_895).abs() < 1e-12);
    assert!((res["rate_profile"]["c_star"].as_f64().unwrap() - (20.0 - 6.0 * 5f64.sqrt()) / 55.0).abs() < 1e-12);

    let cfg = bounds_config(json!({
        "m": 4.0, "family": "lambda", "decay_exp": 20.0,
        "shift": {"b_kind": "geometric", "input_kind": "geometric", "family": "lambda",
                  "b_exp": 0.5, "input_exp": 0.3}
    }));
    let out = execute(Command::Bounds, cfg, &opts(tmp.path())).unwrap();
    let res = &report(&out.dir)["checks"][0]["result"];
    assert_eq!(res["donsker"]["verdict"], "satisfied (geometric case)");
    // k² e^{−qk} with q = a·b/(b + 2a) for bounded inputs
    assert_eq!(res["envelope"]["base"], "mixed");
    assert_eq!(res["envelope"]["params"]["power"], 2.0);
    let q = res["envelope"]["params"]["exp_rate"].as_f64().unwrap();
    assert!((q - 0.3 * 0.5 / (0.5 + 0.6)).abs() < 1e-15, "{q}");

    let threshold = 2.0 + 1.0 / (2.1 - 2.0);
    let cfg = bounds_config(json!({"m": 2.1, "family": "kappa", "decay_exp": threshold}));
    let out = execute(Command::Bounds, cfg, &opts(tmp.path())).unwrap();
    assert_eq!(out.verdict, Verdict::Inconclusive);
    assert_eq!(report(&out.dir)["checks"][0]["result"]["clt"]["satisfied"], false);
}

#[test]
fn verify_clt_examples() {
    let tmp = tempfile::tempdir().unwrap();
    let mut v = base(iid(json!({"law": "gaussian", "sd": 1.0})));
    v["n_grid"] = json!([256]);
    v["replicates"] = json!(10_000);
    let out = execute(Command::VerifyClt, config(v), &opts(tmp.path())).unwrap();
    let rows = read_csv(&out.dir.join("clt.csv"));
    let d: f64 = rows[0][6].parse().unwrap();
    assert!(d < 0.03, "{d}");
    assert_eq!(rows[0][5].parse::<f64>().unwrap(), 1.0);

    let err = execute(Command::VerifyClt, config(base(zero_linear())), &opts(tmp.path())).unwrap_err();
    assert!(err.to_string().contains("degenerate sigma"), "{err}");
}

#[test]
fn verify_moments_examples() {
    let tmp = tempfile::tempdir().unwrap();
    let mut v = base(iid(json!({"law": "rademacher"})));
    v["n_grid"] = json!([64, 128, 256, 512]);
    v["replicates"] = json!(4000);
    v["delta"] = json!(3.0);
    let out = execute(Command::VerifyMoments, config(v.clone()), &opts(tmp.path())).unwrap();
    assert_eq!(out.verdict, Verdict::Pass);
    assert_eq!(
        report(&out.dir)["checks"][0]["result"]["conclusion"],
        "bounded, consistent with the moment bound"
    );

    v.as_object_mut().unwrap().remove("delta");
    v["theory"] = json!({"m": 4.0, "family": "kappa", "decay_exp": 3.0});
    let out = execute(Command::VerifyMoments, config(v.clone()), &opts(tmp.path())).unwrap();
    let delta = report(&out.dir)["checks"][0]["result"]["delta"].as_f64().unwrap();
    assert!((delta - 2.556_230_589_874_905).abs() < 1e-12);

    v["delta"] = json!(2.0);
    let err = ExperimentConfig::from_json(&v.to_string())
        .and_then(|c| execute(Command::VerifyMoments, c, &opts(tmp.path())))
        .unwrap_err();
    assert!(err.to_string().contains("Δ must exceed 2"), "{err}");
}

#[test]
fn rate_fit_examples() {
    let exact: Vec<(f64, f64)> = (8..14).map(|k| (2f64.powi(k), 2f64.powi(k).powf(-0.5))).collect();
    let fit = fit_rate(&exact).unwrap();
    assert!((fit.rate() - 0.5).abs() < 1e-12);
    assert_eq!(rate_verdict(fit.rate(), fit.slope_stderr, Some(0.249)), Verdict::Pass);

    // Gaussian iid sums are exactly Gaussian: every distance is pure noise.
    let tmp = tempfile::tempdir().unwrap();
    let mut v = base(iid(json!({"law": "gaussian", "sd": 1.0})));
    v["n_grid"] = json!([16, 32, 64, 128]);
    v["replicates"] = json!(2000);
    let out = execute(Command::RateFit, config(v), &opts(tmp.path())).unwrap();
    assert_eq!(out.verdict, Verdict::Inconclusive);
    assert!(out.checks[0].2.as_deref().unwrap().contains("inconclusive at this R"));
}

fn run_bin(cfg: &Value, out: &Path, extra: &[&str]) -> (i32, String) {
    let path = out.join(format!("cfg-{}.json", fs::read_dir(out).unwrap().count()));
    fs::write(&path, cfg.to_string()).unwrap();
    let o = Proc::new(BIN)
        .args(extra)
        .arg("--config")
        .arg(&path)
        .arg("--out")
        .arg(out)
        .env_remove("WEAKDEP_OUT")
        .output()
        .unwrap();
    (o.status.code().unwrap(), String::from_utf8_lossy(&o.stdout).into_owned())
}

#[test]
fn exit_code_harness() {
    let tmp = tempfile::tempdir().unwrap();

    let mut empty = base(iid(json!({"law": "rademacher"})));
    empty["checks"] = json!([]);
    assert_eq!(run_bin(&empty, tmp.path(), &["full-report"]).0, 2);

    let mut pass = base(iid(json!({"law": "gaussian", "sd": 1.0})));
    pass["n_grid"] = json!([256]);
    pass["replicates"] = json!(10_000);
    pass["checks"] = json!(["bounds", "clt"]);
    pass["theory"] = json!({"m": 4.0, "family": "kappa", "decay_exp": 3.0});
    let (code, stdout) = run_bin(&pass, tmp.path(), &["full-report"]);
    assert_eq!(code, 0, "{stdout}");

    let mut degenerate = base(zero_linear());
    degenerate["checks"] = json!(["clt", "bounds"]);
    degenerate["theory"] = json!({"m": 4.0, "family": "kappa", "decay_exp": 3.0});
    let (code, stdout) = run_bin(&degenerate, tmp.path(), &["full-report"]);
    assert_eq!(code, 1, "{stdout}");
    assert!(stdout.contains("degenerate sigma"), "{stdout}");

    let mut only_bad = degenerate.clone();
    only_bad["checks"] = json!(["clt"]);
    assert_eq!(run_bin(&only_bad, tmp.path(), &["full-report"]).0, 2);
    assert_eq!(run_bin(&only_bad, tmp.path(), &["verify-clt"]).0, 2);

    assert_eq!(Proc::new(BIN).arg("full-report").output().unwrap().status.code(), Some(2));
    assert_eq!(Proc::new(BIN).arg("nonsense").output().unwrap().status.code(), Some(2));
    assert_eq!(Proc::new(BIN).arg("--help").output().unwrap().status.code(), Some(0));
}

#[test]
fn env_fallback_and_seed_override() {
    let tmp = tempfile::tempdir().unwrap();
    let env_dir = tmp.path().join("from-env");
    let cfg_path = tmp.path().join("c.json");
    fs::write(&cfg_path, base(iid(json!({"law": "gaussian", "sd": 1.0}))).to_string()).unwrap();
    let run = |seed: &str| {
        let o = Proc::new(BIN)
            .args(["simulate", "--seed", seed, "--config"])
            .arg(&cfg_path)
            .env("WEAKDEP_OUT", &env_dir)
            .output()
            .unwrap();
        assert_eq!(o.status.code(), Some(0));
        let line = String::from_utf8(o.stdout).unwrap();
        PathBuf::from(line.lines().next().unwrap().trim_start_matches("run directory: "))
    };
    let a = run("11");
    let b = run("12");
    assert!(a.starts_with(&env_dir) && b.starts_with(&env_dir));
    assert_ne!(fs::read(a.join("path_n8.csv")).unwrap(), fs::read(b.join("path_n8.csv")).unwrap());
    let side: Value = serde_json::from_str(&fs::read_to_string(a.join("simulate.json")).unwrap()).unwrap();
    assert_eq!(side["seed"], "11");
}
