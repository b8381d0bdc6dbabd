use std::io::Write;

use clap::ValueEnum;
use serde::Serialize;

use crate::Failure;

#[derive(Clone, Copy, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// A result rendered both ways; the format is picked when printing.
pub struct Emit {
    json: String,
    header: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl Emit {
    pub fn new<T: Serialize>(value: &T, header: &[&str], rows: Vec<Vec<String>>) -> Result<Self, Failure> {
        let json = serde_json::to_string_pretty(value).map_err(|e| Failure::Internal(e.to_string()))?;
        Ok(Self { json, header: header.iter().map(ToString::to_string).collect(), rows })
    }

    pub fn print(&self, format: Format) -> Result<(), Failure> {
        let text = match format {
            Format::Json => format!("{}\n", self.json),
            Format::Csv => {
                let mut s = csv_line(&self.header);
                for row in &self.rows {
                    s.push_str(&csv_line(row));
                }
                s
            }
        };
        std::io::stdout().lock().write_all(text.as_bytes()).map_err(|e| Failure::Internal(e.to_string()))
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn csv_line(fields: &[String]) -> String {
    let mut line = fields.iter().map(|f| csv_field(f)).collect::<Vec<_>>().join(",");
    line.push('\n');
    line
}
