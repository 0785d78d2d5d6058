use std::io::{self, Write};

use clap::ValueEnum;
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

pub const SCHEMA_VERSION: &str = "1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Plain,
    Json,
    Csv,
}

/// Every JSON emission has this shape.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutputEnvelope {
    pub schema_version: String,
    pub command: String,
    pub inputs: Map<String, Value>,
    pub results: Value,
    pub timing_ms: f64,
}

/// What a command produced, before formatting.
pub struct Emission {
    pub command: String,
    pub inputs: Map<String, Value>,
    pub results: Value,
    /// Column names of the tabular view (plain and CSV); they match the JSON row fields.
    pub columns: Vec<&'static str>,
    pub rows: Vec<Map<String, Value>>,
    /// Extra `key: value` lines shown under the plain table.
    pub summary: Vec<(String, String)>,
    /// `false` when a check failed (exit code 1).
    pub ok: bool,
}

impl Emission {
    pub fn envelope(&self, timing_ms: f64) -> OutputEnvelope {
        OutputEnvelope {
            schema_version: SCHEMA_VERSION.to_string(),
            command: self.command.clone(),
            inputs: self.inputs.clone(),
            results: self.results.clone(),
            timing_ms,
        }
    }
}

fn cell(v: Option<&Value>) -> String {
    match v {
        None | Some(Value::Null) => String::new(),
        Some(Value::String(s)) => s.clone(),
        Some(other) => other.to_string(),
    }
}

/// JSON with keys sorted at every level (serde_json maps are ordered).
pub fn to_json(envelope: &OutputEnvelope) -> String {
    let value = serde_json::to_value(envelope).expect("envelope is plain data");
    serde_json::to_string_pretty(&value).expect("values always serialize")
}

pub fn render(out: &mut dyn Write, e: &Emission, format: Format, timing_ms: Option<f64>) -> io::Result<()> {
    match format {
        Format::Json => writeln!(out, "{}", to_json(&e.envelope(timing_ms.unwrap_or(0.0)))),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(&e.columns)?;
            for row in &e.rows {
                w.write_record(e.columns.iter().map(|c| cell(row.get(*c))))?;
            }
            w.flush()
        }
        Format::Plain => render_plain(out, e, timing_ms),
    }
}

fn render_plain(out: &mut dyn Write, e: &Emission, timing_ms: Option<f64>) -> io::Result<()> {
    let inputs: Vec<String> = e.inputs.iter().map(|(k, v)| format!("{k}={}", cell(Some(v)))).collect();
    writeln!(out, "{}  {}", e.command, inputs.join(" "))?;
    if !e.rows.is_empty() {
        let cells: Vec<Vec<String>> = e
            .rows
            .iter()
            .map(|r| e.columns.iter().map(|c| cell(r.get(*c))).collect())
            .collect();
        let widths: Vec<usize> = e
            .columns
            .iter()
            .enumerate()
            .map(|(i, c)| cells.iter().map(|r| r[i].len()).chain([c.len()]).max().unwrap_or(0))
            .collect();
        let line = |fields: Vec<&str>| {
            fields
                .iter()
                .zip(&widths)
                .map(|(f, w)| format!("{f:<w$}"))
                .collect::<Vec<_>>()
                .join("  ")
                .trim_end()
                .to_string()
        };
        writeln!(out, "{}", line(e.columns.clone()))?;
        for r in &cells {
            writeln!(out, "{}", line(r.iter().map(String::as_str).collect()))?;
        }
    }
    for (k, v) in &e.summary {
        writeln!(out, "{k}: {v}")?;
    }
    if let Some(ms) = timing_ms {
        writeln!(out, "time: {ms:.3} ms")?;
    }
    Ok(())
}
