//! `report.json`: a versioned summary of one run.
//!
//! The timestamp lives here and nowhere else, so the CSV tables of two runs
//! of the same config are byte-identical.

use std::path::Path;
use std::time::{SystemTime, UNIX_EPOCH};

use serde_json::{json, Map, Value};

use crate::error::{CliError, Result};

pub const SCHEMA_VERSION: u32 = 1;
pub const REPORT_FILE: &str = "report.json";

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub command: String,
    /// CSV and binary files written next to the report.
    pub tables: Vec<String>,
    pub results: Map<String, Value>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Self {
            command: command.to_string(),
            tables: Vec::new(),
            results: Map::new(),
        }
    }

    pub fn set(&mut self, key: &str, value: impl Into<Value>) {
        self.results.insert(key.to_string(), value.into());
    }

    pub fn add_table(&mut self, name: &str) {
        self.tables.push(name.to_string());
    }

    pub fn to_json(&self, generated_unix: u64) -> Value {
        json!({
            "schema_version": SCHEMA_VERSION,
            "command": self.command,
            "generated_unix": generated_unix,
            "tables": self.tables,
            "results": self.results,
        })
    }
}

/// Non-finite numbers become `null`.
pub fn number(x: f64) -> Value {
    serde_json::Number::from_f64(x).map_or(Value::Null, Value::Number)
}

pub fn complex(z: ptxform_core::Complex64) -> Value {
    json!({ "re": number(z.re), "im": number(z.im) })
}

pub fn emit_report(dir: &Path, report: &Report) -> Result<()> {
    let now = SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs());
    let path = dir.join(REPORT_FILE);
    let text = serde_json::to_string_pretty(&report.to_json(now)).expect("json values serialize");
    std::fs::write(&path, text + "\n").map_err(|e| CliError::io(path, e))
}
