//! Run directories and file writes. Every run gets a fresh directory;
//! existing files are never touched.

use std::fs;
use std::io::{ErrorKind, Write};
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::error::{CliError, Result};
use crate::report::Table;

pub const OUT_ENV: &str = "WEAKDEP_OUT";
pub const DEFAULT_OUT: &str = "runs";

/// `--out`, then `$WEAKDEP_OUT`, then the config's `output_dir`, then `runs`.
pub fn resolve_base(flag: Option<&Path>, env: Option<&str>, config: Option<&Path>) -> PathBuf {
    flag.map(Path::to_path_buf)
        .or_else(|| env.filter(|s| !s.is_empty()).map(PathBuf::from))
        .or_else(|| config.map(Path::to_path_buf))
        .unwrap_or_else(|| PathBuf::from(DEFAULT_OUT))
}

fn out_err(path: &Path) -> impl FnOnce(std::io::Error) -> CliError + '_ {
    move |source| CliError::Output {
        path: path.to_owned(),
        source,
    }
}

/// Creates `base/<name>-<stamp>`, adding `-1`, `-2`, … on collision.
pub fn create_run_dir(base: &Path, name: &str, stamp: &str) -> Result<PathBuf> {
    fs::create_dir_all(base).map_err(out_err(base))?;
    let safe: String = name
        .chars()
        .map(|c| if c.is_ascii_alphanumeric() || c == '-' || c == '_' { c } else { '_' })
        .collect();
    for attempt in 0u32.. {
        let dir = if attempt == 0 {
            base.join(format!("{safe}-{stamp}"))
        } else {
            base.join(format!("{safe}-{stamp}-{attempt}"))
        };
        match fs::create_dir(&dir) {
            Ok(()) => return Ok(dir),
            Err(e) if e.kind() == ErrorKind::AlreadyExists => continue,
            Err(e) => return Err(out_err(&dir)(e)),
        }
    }
    unreachable!("attempt counter exhausted")
}

/// Writes a new file; fails if it already exists.
pub fn write_new(path: &Path, bytes: &[u8]) -> Result<()> {
    let mut f = fs::OpenOptions::new()
        .write(true)
        .create_new(true)
        .open(path)
        .map_err(out_err(path))?;
    f.write_all(bytes).map_err(out_err(path))
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut bytes = serde_json::to_vec_pretty(value)?;
    bytes.push(b'\n');
    write_new(path, &bytes)
}

pub fn write_table(dir: &Path, table: &Table) -> Result<PathBuf> {
    let path = dir.join(&table.file);
    write_new(&path, &table.to_csv()?)?;
    Ok(path)
}
