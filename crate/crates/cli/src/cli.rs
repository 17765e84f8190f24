//! Command-line surface.

use std::path::PathBuf;

use clap::{Parser, Subcommand};

use crate::config::ExperimentConfig;
use crate::output::OUT_ENV;
use crate::run::{execute, Command, RunOptions};

#[derive(Debug, Parser)]
#[command(name = "weakdep", version, about = "Simulate weakly dependent sequences and check limit theorems")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Cmd,

    /// Experiment configuration (JSON).
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,

    /// Output base directory; falls back to $WEAKDEP_OUT, then the config.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    /// Overrides the master seed and the process seed.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, Copy, Subcommand)]
pub enum Cmd {
    /// Write sample paths, one CSV per n.
    Simulate,
    /// Evaluate thresholds, rate constants, heredity curves and envelopes.
    Bounds,
    /// Kolmogorov distance of normalized sums to the Gaussian limit.
    VerifyClt,
    /// Scaling of E|S_n|^Δ with n.
    VerifyMoments,
    /// Power-law fit of the Kolmogorov distances.
    RateFit,
    /// All checks listed in the config.
    FullReport,
}

impl From<Cmd> for Command {
    fn from(c: Cmd) -> Self {
        match c {
            Cmd::Simulate => Command::Simulate,
            Cmd::Bounds => Command::Bounds,
            Cmd::VerifyClt => Command::VerifyClt,
            Cmd::VerifyMoments => Command::VerifyMoments,
            Cmd::RateFit => Command::RateFit,
            Cmd::FullReport => Command::FullReport,
        }
    }
}

/// Runs a parsed command line and returns the process exit code.
pub fn run(cli: Cli) -> u8 {
    let Some(path) = cli.config.as_deref() else {
        eprintln!("error: --config <path> is required");
        return 2;
    };
    let cfg = match ExperimentConfig::load(path) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return 2;
        }
    };
    let opts = RunOptions {
        out: cli.out,
        env_out: std::env::var(OUT_ENV).ok(),
        threads: cli.threads,
        seed: cli.seed,
    };
    match execute(cli.command.into(), cfg, &opts) {
        Ok(outcome) => {
            println!("run directory: {}", outcome.dir.display());
            for (check, verdict, diag) in &outcome.checks {
                match diag {
                    Some(d) => println!("{:<12} {verdict:?}: {d}", check.name()),
                    None => println!("{:<12} {verdict:?}", check.name()),
                }
            }
            println!("overall: {:?}", outcome.verdict);
            outcome.exit_code()
        }
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}
