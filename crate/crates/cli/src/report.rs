//! Verdicts, tables and the run report.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::config::{Check, ExperimentConfig, SCHEMA_VERSION};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
}

impl Verdict {
    /// Overall verdict: any fail fails; otherwise any pass passes.
    pub fn combine<I: IntoIterator<Item = Verdict>>(verdicts: I) -> Verdict {
        let mut out = Verdict::Inconclusive;
        for v in verdicts {
            match v {
                Verdict::Fail => return Verdict::Fail,
                Verdict::Pass => out = Verdict::Pass,
                Verdict::Inconclusive => {}
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(u64),
    Float(f64),
    Text(String),
}

impl Cell {
    pub fn render(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Float(v) => format_float(*v),
            Cell::Text(s) => s.clone(),
        }
    }
}

impl From<u64> for Cell {
    fn from(v: u64) -> Self {
        Cell::Int(v)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as u64)
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Float(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_owned())
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Text(v)
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Text(v.to_string())
    }
}

/// 17 significant digits: round-trips every `f64`.
pub fn format_float(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else {
        v.to_string()
    }
}

/// A CSV table with fixed columns.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub file: String,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(file: impl Into<String>, columns: &[&'static str]) -> Self {
        Table {
            file: file.into(),
            columns: columns.to_vec(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len(), "row width in {}", self.file);
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> csv::Result<Vec<u8>> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.columns)?;
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::render))?;
        }
        w.into_inner().map_err(|e| e.into_error().into())
    }
}

/// Result of one check: the JSON section and its CSV tables.
#[derive(Debug, Clone)]
pub struct CheckOutput {
    pub check: Check,
    pub verdict: Verdict,
    pub summary: Value,
    pub tables: Vec<Table>,
    pub diagnostic: Option<String>,
}

impl CheckOutput {
    pub fn errored(check: Check, message: String) -> Self {
        CheckOutput {
            check,
            verdict: Verdict::Fail,
            summary: Value::Null,
            tables: Vec::new(),
            diagnostic: Some(message),
        }
    }

    pub fn section(&self) -> CheckSection {
        CheckSection {
            check: self.check,
            verdict: self.verdict,
            diagnostic: self.diagnostic.clone(),
            tables: self.tables.iter().map(|t| t.file.clone()).collect(),
            result: self.summary.clone(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckSection {
    pub check: Check,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub diagnostic: Option<String>,
    pub tables: Vec<String>,
    pub result: Value,
}

#[derive(Debug, Clone, Serialize)]
pub struct Environment {
    pub version: &'static str,
    pub timestamp: String,
    pub wall_time_s: f64,
    pub threads: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub schema: u32,
    pub command: String,
    pub config: ExperimentConfig,
    pub environment: Environment,
    #[serde(with = "weakdep::seed")]
    pub master_seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub theory: Option<Value>,
    pub checks: Vec<CheckSection>,
    pub verdict: Verdict,
    pub notes: Vec<String>,
}

impl RunReport {
    pub fn new(
        command: &str,
        config: &ExperimentConfig,
        environment: Environment,
        theory: Option<Value>,
        outputs: &[CheckOutput],
    ) -> Self {
        RunReport {
            schema: SCHEMA_VERSION,
            command: command.to_owned(),
            config: config.clone(),
            environment,
            master_seed: config.master_seed,
            theory,
            checks: outputs.iter().map(CheckOutput::section).collect(),
            verdict: Verdict::combine(outputs.iter().map(|o| o.verdict)),
            notes: vec![
                "Rates are asymptotic upper bounds; the rate check is one-sided and \
                 distances below the Monte Carlo noise floor are not used."
                    .to_owned(),
            ],
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verdict_combination() {
        use Verdict::*;
        assert_eq!(Verdict::combine([]), Inconclusive);
        assert_eq!(Verdict::combine([Pass, Inconclusive]), Pass);
        assert_eq!(Verdict::combine([Pass, Fail, Inconclusive]), Fail);
    }

    #[test]
    fn floats_round_trip() {
        for v in [0.1, 1.0 / 3.0, -2.5e-300, 1e300, 0.0, f64::MIN_POSITIVE] {
            let s = format_float(v);
            assert_eq!(s.parse::<f64>().unwrap(), v, "{s}");
        }
        assert_eq!(format_float(0.5), "5.0000000000000000e-1");
    }

    #[test]
    fn csv_rendering() {
        let mut t = Table::new("t.csv", &["n", "value", "tag"]);
        t.push(vec![3usize.into(), 0.25.into(), "a,b".into()]);
        let text = String::from_utf8(t.to_csv().unwrap()).unwrap();
        assert_eq!(text, "n,value,tag\n3,2.5000000000000000e-1,\"a,b\"\n");
    }
}
