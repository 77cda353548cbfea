use std::io::Write;

use serde_json::Value;

use crate::args::Format;
use crate::CliError;

/// A finished command: its JSON payload, a CSV table and the verdict.
#[derive(Clone, Debug)]
pub struct Output {
    pub json: Value,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
    pub pretty: Option<String>,
    pub pass: bool,
}

impl Output {
    pub fn new(json: Value, header: &[&str], rows: Vec<Vec<String>>) -> Self {
        Self {
            json,
            header: header.iter().map(|s| s.to_string()).collect(),
            rows,
            pretty: None,
            pass: true,
        }
    }

    pub fn with_pass(mut self, pass: bool) -> Self {
        self.pass = pass;
        self
    }

    pub fn with_pretty(mut self, text: String) -> Self {
        self.pretty = Some(text);
        self
    }

    pub fn write(&self, format: Format, out: &mut dyn Write) -> Result<(), CliError> {
        match format {
            Format::Json => {
                serde_json::to_writer(&mut *out, &self.json)?;
                writeln!(out)?;
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(&mut *out);
                w.write_record(&self.header)?;
                for r in &self.rows {
                    w.write_record(r)?;
                }
                w.flush()?;
            }
            Format::Pretty => match &self.pretty {
                Some(text) => write!(out, "{text}")?,
                None => {
                    let mut text = String::new();
                    pretty_value(&self.json, 0, &mut text);
                    write!(out, "{text}")?;
                }
            },
        }
        Ok(())
    }
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(items) if items.iter().all(|i| !i.is_object() && !i.is_array()) => {
            Some(format!(
                "[{}]",
                items
                    .iter()
                    .filter_map(scalar)
                    .collect::<Vec<_>>()
                    .join(", ")
            ))
        }
        Value::Array(items) if items.iter().all(|i| matches!(i, Value::Array(_))) => Some(
            items
                .iter()
                .map(|i| scalar(i).unwrap_or_default())
                .collect::<Vec<_>>()
                .join(" "),
        ),
        _ => None,
    }
}

fn pretty_value(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(map) => {
            for (k, v) in map {
                match scalar(v) {
                    Some(s) => out.push_str(&format!("{pad}{k}: {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        pretty_value(v, indent + 1, out);
                    }
                }
            }
        }
        Value::Array(items) => {
            for item in items {
                match scalar(item) {
                    Some(s) => out.push_str(&format!("{pad}- {s}\n")),
                    None => {
                        let mut inner = String::new();
                        pretty_value(item, 0, &mut inner);
                        out.push_str(&format!(
                            "{pad}- {}\n",
                            inner.trim_end().replace('\n', ", ")
                        ));
                    }
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", scalar(other).unwrap_or_default())),
    }
}
