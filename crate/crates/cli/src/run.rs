//! Subcommand execution: validation, thread pool, checks, and persistence.

use std::path::{Path, PathBuf};
use std::time::Instant;

use serde_json::json;
use weakdep::models::PreparedProcess;
use weakdep::rng::Substream;

use crate::checks::{theory_block, Context};
use crate::config::{Check, ExperimentConfig, SCHEMA_VERSION};
use crate::error::{config_err, CliError, Result};
use crate::output::{create_run_dir, resolve_base, write_json, write_table};
use crate::report::{CheckOutput, Environment, RunReport, Table, Verdict};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Simulate,
    Bounds,
    VerifyClt,
    VerifyMoments,
    RateFit,
    FullReport,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Simulate => "simulate",
            Command::Bounds => "bounds",
            Command::VerifyClt => "verify-clt",
            Command::VerifyMoments => "verify-moments",
            Command::RateFit => "rate-fit",
            Command::FullReport => "full-report",
        }
    }

    /// Checks run by the command; `full-report` takes them from the config.
    pub fn checks(self, cfg: &ExperimentConfig) -> Vec<Check> {
        match self {
            Command::Simulate => Vec::new(),
            Command::Bounds => vec![Check::Bounds],
            Command::VerifyClt => vec![Check::Clt],
            Command::VerifyMoments => vec![Check::Moments],
            Command::RateFit => vec![Check::Rate],
            Command::FullReport => cfg.checks.clone(),
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct RunOptions {
    pub out: Option<PathBuf>,
    /// Value of `WEAKDEP_OUT`, read by the caller.
    pub env_out: Option<String>,
    pub threads: Option<usize>,
    pub seed: Option<u64>,
}

#[derive(Debug, Clone)]
pub struct RunOutcome {
    pub dir: PathBuf,
    pub verdict: Verdict,
    pub checks: Vec<(Check, Verdict, Option<String>)>,
    /// Every requested check errored before producing a verdict.
    pub all_errored: bool,
}

impl RunOutcome {
    /// 0 when nothing failed, 1 on any fail, 2 when no check could run.
    pub fn exit_code(&self) -> u8 {
        if self.all_errored {
            2
        } else if self.verdict == Verdict::Fail {
            1
        } else {
            0
        }
    }
}

/// Validates `cfg` for `cmd`, runs it, and writes a fresh run directory.
pub fn execute(cmd: Command, mut cfg: ExperimentConfig, opts: &RunOptions) -> Result<RunOutcome> {
    if let Some(seed) = opts.seed {
        cfg.override_seed(seed);
    }
    let checks = cmd.checks(&cfg);
    if cmd == Command::FullReport && checks.is_empty() {
        return config_err("full-report needs a nonempty checks list");
    }
    if cmd == Command::Simulate && cfg.n_grid.is_empty() {
        return config_err("simulate needs a nonempty n_grid");
    }
    cfg.validate_for(&checks)?;
    let base = resolve_base(
        opts.out.as_deref(),
        opts.env_out.as_deref(),
        cfg.output_dir.as_deref(),
    );
    match opts.threads {
        Some(0) => config_err("--threads must be positive"),
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .map_err(|e| CliError::Threads(e.to_string()))?
            .install(|| run_in_pool(cmd, &cfg, &checks, &base)),
        None => run_in_pool(cmd, &cfg, &checks, &base),
    }
}

fn timestamp() -> (String, String) {
    let now = chrono::Utc::now();
    (
        now.format("%Y%m%dT%H%M%S%.3fZ").to_string(),
        now.to_rfc3339_opts(chrono::SecondsFormat::Millis, true),
    )
}

fn run_in_pool(cmd: Command, cfg: &ExperimentConfig, checks: &[Check], base: &Path) -> Result<RunOutcome> {
    let start = Instant::now();
    let (stamp, iso) = timestamp();
    if cmd == Command::Simulate {
        return simulate(cfg, base, &stamp, &iso, start);
    }

    let mut ctx = Context::new(cfg);
    let mut outputs = Vec::new();
    let mut errors = 0;
    for &check in checks {
        match ctx.run(check) {
            Ok(out) => outputs.push(out),
            // a single-check command aborts; full-report records and moves on
            Err(e) if cmd != Command::FullReport => return Err(e),
            Err(e) => {
                errors += 1;
                outputs.push(CheckOutput::errored(check, e.to_string()));
            }
        }
    }
    let all_errored = errors == outputs.len();

    let dir = create_run_dir(base, &cfg.name, &stamp)?;
    for out in &outputs {
        for table in &out.tables {
            write_table(&dir, table)?;
        }
    }
    let env = Environment {
        version: env!("CARGO_PKG_VERSION"),
        timestamp: iso,
        wall_time_s: start.elapsed().as_secs_f64(),
        threads: rayon::current_num_threads(),
    };
    let report = RunReport::new(cmd.name(), cfg, env, theory_block(cfg), &outputs);
    write_json(&dir.join("report.json"), &report)?;
    Ok(RunOutcome {
        dir,
        verdict: report.verdict,
        checks: outputs
            .iter()
            .map(|o| (o.check, o.verdict, o.diagnostic.clone()))
            .collect(),
        all_errored,
    })
}

fn simulate(cfg: &ExperimentConfig, base: &Path, stamp: &str, iso: &str, start: Instant) -> Result<RunOutcome> {
    let process = PreparedProcess::new(&cfg.spec)?;
    let sub = Substream::new(cfg.spec.seed, 0);
    let paths: Vec<_> = cfg.n_grid.iter().map(|&n| process.sample_path(n, &sub)).collect();
    let dir = create_run_dir(base, &cfg.name, stamp)?;
    let mut files = Vec::new();
    for path in &paths {
        let mut table = Table::new(format!("path_n{}.csv", path.len()), &["t_index", "value"]);
        for (t, v) in path.values.iter().enumerate() {
            table.push(vec![t.into(), (*v).into()]);
        }
        write_table(&dir, &table)?;
        files.push(json!({
            "n": path.len(),
            "file": table.file,
            "stream": path.stream,
            "error_bound": path.error_bound,
        }));
    }
    let sidecar = json!({
        "schema": SCHEMA_VERSION,
        "command": Command::Simulate.name(),
        "name": cfg.name,
        "family": cfg.spec.family_name(),
        "spec_digest": process.digest(),
        "seed": cfg.spec.seed.to_string(),
        "spec": cfg.spec,
        "paths": files,
        "environment": Environment {
            version: env!("CARGO_PKG_VERSION"),
            timestamp: iso.to_owned(),
            wall_time_s: start.elapsed().as_secs_f64(),
            threads: rayon::current_num_threads(),
        },
    });
    write_json(&dir.join("simulate.json"), &sidecar)?;
    Ok(RunOutcome {
        dir,
        verdict: Verdict::Pass,
        checks: Vec::new(),
        all_errored: false,
    })
}
