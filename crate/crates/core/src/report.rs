//! Machine-readable run reports: JSON verdicts plus CSV profiles with
//! byte-stable bodies.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::error::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Flagged,
}

/// One named tolerance check.
#[derive(Debug, Clone, Serialize)]
pub struct Gate {
    pub name: String,
    pub value: f64,
    pub threshold: f64,
    /// "lt", "le" or "true" (value is 1/0 for booleans).
    pub kind: &'static str,
    pub pass: bool,
}

impl Gate {
    /// Passes when `value < threshold`.
    pub fn below(name: &str, value: f64, threshold: f64) -> Self {
        Gate { name: name.into(), value, threshold, kind: "lt", pass: value < threshold }
    }

    /// Passes when `value <= threshold`.
    pub fn at_most(name: &str, value: f64, threshold: f64) -> Self {
        Gate { name: name.into(), value, threshold, kind: "le", pass: value <= threshold }
    }

    /// Passes when the condition holds.
    pub fn holds(name: &str, ok: bool) -> Self {
        Gate {
            name: name.into(),
            value: if ok { 1.0 } else { 0.0 },
            threshold: 1.0,
            kind: "true",
            pass: ok,
        }
    }
}

/// The structured result of one CLI run.
#[derive(Debug, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub command: String,
    pub config_hash: String,
    pub verdict: Verdict,
    /// Set when any numerical convergence flag tripped.
    pub flagged: bool,
    pub gates: Vec<Gate>,
    pub summary: BTreeMap<String, f64>,
    pub csv_files: Vec<String>,
    pub timing_ms: u128,
    pub resolved_config: serde_json::Value,
}

impl Report {
    pub fn new(command: &str, resolved_config: serde_json::Value) -> Self {
        Report {
            schema_version: 1,
            command: command.into(),
            config_hash: config_hash(&resolved_config),
            verdict: Verdict::Pass,
            flagged: false,
            gates: Vec::new(),
            summary: BTreeMap::new(),
            csv_files: Vec::new(),
            timing_ms: 0,
            resolved_config,
        }
    }

    pub fn gate(&mut self, gate: Gate) {
        self.gates.push(gate);
    }

    pub fn metric(&mut self, name: &str, value: f64) {
        self.summary.insert(name.into(), value);
    }

    /// Final verdict: any failed gate wins over numerical flags.
    pub fn finalize(&mut self, timing_ms: u128) {
        self.timing_ms = timing_ms;
        self.verdict = if self.gates.iter().any(|g| !g.pass) {
            Verdict::Fail
        } else if self.flagged {
            Verdict::Flagged
        } else {
            Verdict::Pass
        };
    }

    /// Exit-code contract: 0 pass, 1 fail, 3 numerical flag.
    pub fn exit_code(&self) -> i32 {
        match self.verdict {
            Verdict::Pass => 0,
            Verdict::Fail => 1,
            Verdict::Flagged => 3,
        }
    }

    pub fn write_json(&self, path: &Path) -> Result<()> {
        let text = serde_json::to_string_pretty(self)
            .map_err(|e| crate::error::Error::Format(e.to_string()))?;
        std::fs::write(path, text + "\n")?;
        Ok(())
    }
}

/// SHA-256 of the canonical (sorted-key) JSON encoding.
pub fn config_hash(value: &serde_json::Value) -> String {
    use sha2::{Digest, Sha256};
    let canonical = value.to_string();
    let mut hasher = Sha256::new();
    hasher.update(canonical.as_bytes());
    hex::encode(hasher.finalize())
}

/// Shortest-round-trip float formatting shared by every CSV writer, so
/// bodies are byte-identical across runs and thread counts.
pub fn format_float(v: f64) -> String {
    if v.is_nan() {
        "nan".into()
    } else if v.is_infinite() {
        if v > 0.0 { "inf".into() } else { "-inf".into() }
    } else {
        format!("{v:?}")
    }
}

/// A CSV table with a fixed header; bodies render deterministically.
#[derive(Debug, Clone)]
pub struct CsvTable {
    header: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl CsvTable {
    pub fn new(columns: &[&str]) -> Self {
        CsvTable { header: columns.iter().map(|s| s.to_string()).collect(), rows: Vec::new() }
    }

    pub fn row(&mut self, cells: Vec<String>) {
        debug_assert_eq!(cells.len(), self.header.len());
        self.rows.push(cells);
    }

    pub fn body(&self) -> Vec<u8> {
        let mut out = Vec::new();
        let _ = writeln!(out, "{}", self.header.join(","));
        for r in &self.rows {
            let _ = writeln!(out, "{}", r.join(","));
        }
        out
    }

    pub fn write_to(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.body())?;
        Ok(())
    }
}

/// Resolves an output file path inside the run directory.
pub fn out_path(dir: &Path, name: &str) -> PathBuf {
    dir.join(name)
}
