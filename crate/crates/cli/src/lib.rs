//! Experiment runner for the `weakdep` laboratory: JSON configs in, a
//! timestamped run directory with a JSON report and CSV tables out.

pub mod checks;
pub mod cli;
pub mod config;
mod error;
pub mod output;
pub mod report;
pub mod run;

pub use config::{Check, ExperimentConfig};
pub use error::{CliError, Result};
pub use report::Verdict;
pub use run::{execute, Command, RunOptions, RunOutcome};
