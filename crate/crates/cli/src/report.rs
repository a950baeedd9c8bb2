//! The structured report every command emits: the command name, its
//! parameters, a result payload and an optional certificate, plus elapsed
//! wall time. JSON output has a stable schema and stable key order; the text
//! form renders the same data for reading.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;

use serde::Serialize;
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub params: BTreeMap<String, Value>,
    pub result: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Value>,
    pub elapsed_ms: u64,
    /// Lines for the text renderer, in order; not part of the JSON schema.
    #[serde(skip)]
    pub text_lines: Vec<String>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Self {
            command: command.to_string(),
            params: BTreeMap::new(),
            result: Value::Null,
            certificate: None,
            elapsed_ms: 0,
            text_lines: Vec::new(),
        }
    }

    pub fn param(&mut self, key: &str, value: impl Into<Value>) {
        self.params.insert(key.to_string(), value.into());
    }

    pub fn line(&mut self, line: impl Into<String>) {
        self.text_lines.push(line.into());
    }

    fn render_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("command: {}\n", self.command));
        for (key, value) in &self.params {
            out.push_str(&format!("  {key}: {value}\n"));
        }
        for line in &self.text_lines {
            out.push_str(line);
            out.push('\n');
        }
        out.push_str(&format!("elapsed_ms: {}\n", self.elapsed_ms));
        out
    }

    pub fn emit(&self, format: Format, out: Option<&Path>) -> std::io::Result<()> {
        let rendered = match format {
            Format::Text => self.render_text(),
            Format::Json => {
                let mut json = serde_json::to_string_pretty(self).expect("report serializes");
                json.push('\n');
                json
            }
        };
        match out {
            Some(path) => std::fs::write(path, rendered),
            None => std::io::stdout().write_all(rendered.as_bytes()),
        }
    }
}
