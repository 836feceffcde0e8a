//! Run reports, exit status and output formats.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use fsslab_core::fss::PageTable;
use serde::{Deserialize, Serialize};
use serde_json::Value;

pub const SCHEMA: &str = "fsslab.run/1";

/// Everything a run reports. Field order, and therefore the JSON, is fixed;
/// only `timing_ms` varies between identical invocations.
#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct RunReport {
    pub schema: String,
    pub command: String,
    pub inputs: BTreeMap<String, String>,
    pub params: BTreeMap<String, String>,
    pub outputs: Value,
    pub passed: bool,
    pub stats: Stats,
    pub timing_ms: f64,
}

#[derive(Serialize, Deserialize, Debug, Clone, Default, PartialEq, Eq)]
pub struct Stats {
    /// Largest numerator or denominator bit length met during elimination.
    pub max_numerator_bits: u64,
    pub threads: usize,
}

/// A finished command before formatting.
pub struct Outcome {
    pub report: RunReport,
    pub text: String,
    /// Page table for `--csv`, when the command produced one.
    pub table: Option<PageTable>,
}

impl Outcome {
    pub fn new(command: &str, outputs: Value, text: String) -> Self {
        Outcome {
            report: RunReport {
                schema: SCHEMA.into(),
                command: command.into(),
                inputs: BTreeMap::new(),
                params: BTreeMap::new(),
                outputs,
                passed: true,
                stats: Stats::default(),
                timing_ms: 0.0,
            },
            text,
            table: None,
        }
    }

    pub fn input(mut self, k: &str, v: impl Into<String>) -> Self {
        self.report.inputs.insert(k.into(), v.into());
        self
    }

    pub fn params(mut self, p: BTreeMap<String, String>) -> Self {
        self.report.params = p;
        self
    }

    pub fn passed(mut self, ok: bool) -> Self {
        self.report.passed = ok;
        self
    }

    pub fn bits(mut self, b: u64) -> Self {
        self.report.stats.max_numerator_bits = b;
        self
    }

    pub fn table(mut self, t: PageTable) -> Self {
        self.table = Some(t);
        self
    }
}

/// Failure classes, mapped to exit codes 1 and 2.
#[derive(Debug)]
pub enum CliError {
    Input(String),
}

impl<E: std::fmt::Display> From<E> for CliError {
    fn from(e: E) -> Self {
        CliError::Input(e.to_string())
    }
}

pub fn csv(t: &PageTable, only: Option<(usize, usize)>) -> String {
    let mut s = String::from("r,p,q,e\n");
    for r in 1..=t.r_max {
        for p in 0..=t.n {
            for q in 0..=t.n {
                if only.is_none_or(|b| b == (p, q)) {
                    let _ = writeln!(s, "{r},{p},{q},{}", t.get(r, p, q));
                }
            }
        }
    }
    s
}

/// One grid per page, `q` decreasing down the rows and `p` across.
pub fn grid(t: &PageTable) -> String {
    let width = t.entries.values().map(|e| e.dim.to_string().len()).max().unwrap_or(1).max(2);
    let mut s = String::new();
    for r in 1..=t.r_max {
        let _ = writeln!(s, "E_{r}");
        let _ = write!(s, "{:>4} |", "q\\p");
        for p in 0..=t.n {
            let _ = write!(s, " {p:>width$}");
        }
        s.push('\n');
        for q in (0..=t.n).rev() {
            let _ = write!(s, "{q:>4} |");
            for p in 0..=t.n {
                let _ = write!(s, " {:>width$}", t.get(r, p, q));
            }
            s.push('\n');
        }
        s.push('\n');
    }
    s
}

/// The JSON form of a page table: `pages[r-1][p][q]`.
pub fn table_json(t: &PageTable) -> Value {
    let pages: Vec<Vec<Vec<usize>>> = (1..=t.r_max).map(|r| t.page(r)).collect();
    serde_json::json!({ "label": t.label, "n": t.n, "r_max": t.r_max, "pages": pages })
}
