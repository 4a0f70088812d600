use std::io::Write;
use std::path::Path;

use anyhow::{Context, Result};
use serde_json::{Map, Value};

use crate::Format;

/// One result, renderable in every output format. `fields` keep insertion
/// order so CSV columns and JSON keys are stable.
pub struct Report {
    pub fields: Vec<(String, Value)>,
    /// Human-readable rendering; defaults to `key: value` lines.
    pub text: Option<String>,
}

impl Report {
    pub fn new() -> Self {
        Self { fields: Vec::new(), text: None }
    }

    pub fn field(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.fields.push((key.to_string(), value.into()));
        self
    }

    pub fn serialized(self, key: &str, value: &impl serde::Serialize) -> Result<Self> {
        Ok(self.field(key, serde_json::to_value(value)?))
    }

    pub fn text(mut self, text: String) -> Self {
        self.text = Some(text);
        self
    }

    pub fn emit(&self, format: Format) -> Result<()> {
        let rendered = match format {
            Format::Json => {
                let map: Map<String, Value> = self.fields.iter().cloned().collect();
                serde_json::to_string(&Value::Object(map))? + "\n"
            }
            Format::Csv => {
                let cols: Vec<&(String, Value)> = self.fields.iter().filter(|(_, v)| !v.is_object() && !v.is_array()).collect();
                let header: Vec<String> = cols.iter().map(|(k, _)| csv_cell(k)).collect();
                let row: Vec<String> = cols.iter().map(|(_, v)| csv_cell(&scalar(v))).collect();
                format!("{}\n{}\n", header.join(","), row.join(","))
            }
            Format::Text => match &self.text {
                Some(t) => t.clone(),
                // Long lists belong in the JSON rendering or the output file.
                None => self
                    .fields
                    .iter()
                    .filter(|(_, v)| v.as_array().is_none_or(|a| a.len() <= 32))
                    .map(|(k, v)| format!("{k}: {}\n", scalar(v)))
                    .collect(),
            },
        };
        std::io::stdout().lock().write_all(rendered.as_bytes())?;
        Ok(())
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn csv_cell(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Writes a file body to `path`, or returns it for standard output.
pub fn deliver(body: String, path: Option<&Path>) -> Result<Option<String>> {
    match path {
        Some(p) => {
            std::fs::write(p, &body).with_context(|| format!("writing {}", p.display()))?;
            Ok(None)
        }
        None => Ok(Some(body)),
    }
}

pub fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}
