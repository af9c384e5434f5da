//! Rendering of JSON reports as JSON, flattened CSV, or aligned text.

use clap::ValueEnum;
use serde_json::{Map, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    /// One header row and one value row; nested keys are joined with `.`.
    Csv,
    Pretty,
}

pub fn render(report: &Value, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("JSON values always serialize");
            s.push('\n');
            s
        }
        Format::Csv => to_csv(report),
        Format::Pretty => {
            let mut s = String::new();
            pretty(report, 0, &mut s);
            s
        }
    }
}

/// Leaf values of `v` keyed by dotted path; array elements use their index.
pub fn flatten(v: &Value) -> Vec<(String, Value)> {
    fn rec(prefix: &str, v: &Value, out: &mut Vec<(String, Value)>) {
        let join = |k: &str| {
            if prefix.is_empty() {
                k.to_string()
            } else {
                format!("{prefix}.{k}")
            }
        };
        match v {
            Value::Object(m) if !m.is_empty() => {
                for (k, x) in m {
                    rec(&join(k), x, out);
                }
            }
            Value::Array(a) if !a.is_empty() => {
                for (i, x) in a.iter().enumerate() {
                    rec(&join(&i.to_string()), x, out);
                }
            }
            _ => out.push((prefix.to_string(), v.clone())),
        }
    }
    let mut out = Vec::new();
    rec("", v, &mut out);
    out
}

/// CSV cell for a leaf: strings bare, everything else as JSON text.
pub fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

fn to_csv(report: &Value) -> String {
    let flat = flatten(report);
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(flat.iter().map(|(k, _)| k.as_str()))
        .and_then(|_| w.write_record(flat.iter().map(|(_, v)| cell(v))))
        .expect("writing CSV to memory cannot fail");
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("CSV output is UTF-8")
}

fn is_leaf(v: &Value) -> bool {
    !matches!(v, Value::Object(_) | Value::Array(_))
}

fn inline(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(a) if a.iter().all(is_leaf) => {
            format!("[{}]", a.iter().map(inline).collect::<Vec<_>>().join(", "))
        }
        Value::Object(m) if m.len() == 1 && m.values().all(|x| x.is_array()) => {
            // Single-key wrappers such as {"w": [...]}.
            inline(m.values().next().unwrap())
        }
        other => other.to_string(),
    }
}

fn pretty(v: &Value, indent: usize, out: &mut String) {
    let pad = " ".repeat(indent);
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                pretty_field(k, x, indent, out);
            }
        }
        other => {
            out.push_str(&pad);
            out.push_str(&inline(other));
            out.push('\n');
        }
    }
}

fn pretty_field(key: &str, v: &Value, indent: usize, out: &mut String) {
    let pad = " ".repeat(indent);
    match v {
        Value::Array(rows) if !rows.is_empty() && rows.iter().all(Value::is_object) => {
            out.push_str(&format!("{pad}{key}:\n"));
            table(rows, indent + 2, out);
        }
        Value::Array(rows) if !rows.iter().all(is_leaf) => {
            out.push_str(&format!("{pad}{key}:\n"));
            for r in rows {
                out.push_str(&format!("{pad}  - {}\n", inline(r)));
            }
        }
        Value::Object(m) if !(m.len() == 1 && m.values().all(Value::is_array)) => {
            out.push_str(&format!("{pad}{key}:\n"));
            pretty(v, indent + 2, out);
        }
        other => out.push_str(&format!("{pad}{key}: {}\n", inline(other))),
    }
}

fn table(rows: &[Value], indent: usize, out: &mut String) {
    let pad = " ".repeat(indent);
    let mut cols: Vec<String> = Vec::new();
    for r in rows {
        for k in r.as_object().map(Map::keys).into_iter().flatten() {
            if !cols.contains(k) {
                cols.push(k.clone());
            }
        }
    }
    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|r| cols.iter().map(|c| r.get(c).map(inline).unwrap_or_default()).collect())
        .collect();
    let widths: Vec<usize> = cols
        .iter()
        .enumerate()
        .map(|(i, c)| cells.iter().map(|r| r[i].chars().count()).chain([c.len()]).max().unwrap())
        .collect();
    let line = |items: &[String]| {
        let parts: Vec<String> = items
            .iter()
            .zip(&widths)
            .map(|(s, &w)| format!("{s:<w$}"))
            .collect();
        format!("{pad}{}\n", parts.join("  ").trim_end())
    };
    out.push_str(&line(&cols));
    for r in &cells {
        out.push_str(&line(r));
    }
}
