//! Rendering of command results as JSON (default), CSV or plain text.
//!
//! Output is byte-deterministic: JSON objects are key-sorted maps,
//! tables carry an explicit row order, and floats print in Rust's
//! shortest round-trip form.

use clap::ValueEnum;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, serde::Deserialize, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Json,
    Csv,
    Plain,
}

/// A command result: a JSON document plus an optional tabular view used
/// by the CSV renderer (and for the row section of the plain renderer).
pub struct Doc {
    pub value: Value,
    pub table: Option<Table>,
}

pub struct Table {
    pub headers: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Doc {
    pub fn scalar(value: Value) -> Doc {
        Doc {
            value,
            table: None,
        }
    }

    pub fn with_table(value: Value, headers: Vec<&str>, rows: Vec<Vec<String>>) -> Doc {
        Doc {
            value,
            table: Some(Table {
                headers: headers.into_iter().map(str::to_string).collect(),
                rows,
            }),
        }
    }
}

pub fn render(doc: &Doc, format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => {
            let mut s = serde_json::to_string(&doc.value).expect("serializable value");
            s.push('\n');
            s
        }
        OutputFormat::Csv => render_csv(doc),
        OutputFormat::Plain => render_plain(doc),
    }
}

fn render_csv(doc: &Doc) -> String {
    let mut out = String::new();
    if let Some(table) = &doc.table {
        out.push_str(&table.headers.join(","));
        out.push('\n');
        for row in &table.rows {
            out.push_str(&row.join(","));
            out.push('\n');
        }
        return out;
    }
    out.push_str("key,value\n");
    match &doc.value {
        Value::Object(map) => {
            for (k, v) in map {
                out.push_str(&format!("{k},{}\n", csv_cell(v)));
            }
        }
        other => out.push_str(&format!("value,{}\n", csv_cell(other))),
    }
    out
}

fn csv_cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => {
            let raw = other.to_string();
            if raw.contains(',') {
                format!("\"{}\"", raw.replace('"', "\"\""))
            } else {
                raw
            }
        }
    }
}

fn render_plain(doc: &Doc) -> String {
    let mut out = String::new();
    match &doc.value {
        Value::Object(map) => {
            for (k, v) in map {
                match v {
                    Value::String(s) => out.push_str(&format!("{k}: {s}\n")),
                    other => out.push_str(&format!("{k}: {other}\n")),
                }
            }
        }
        other => out.push_str(&format!("{other}\n")),
    }
    if let Some(table) = &doc.table {
        out.push_str(&table.headers.join("\t"));
        out.push('\n');
        for row in &table.rows {
            out.push_str(&row.join("\t"));
            out.push('\n');
        }
    }
    out
}
