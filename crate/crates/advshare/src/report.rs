//! Machine-readable reports and their aligned text rendering.

use serde::{Deserialize, Serialize};
use serde_json::Value;

/// Bumped whenever the layout of `results` changes incompatibly.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub inputs: Value,
    pub results: Value,
    pub version: String,
    pub schema: u32,
    pub seed: u64,
}

impl Report {
    pub fn new(command: &str, inputs: Value, results: Value, seed: u64) -> Self {
        Report {
            command: command.into(),
            inputs,
            results,
            version: env!("CARGO_PKG_VERSION").into(),
            schema: SCHEMA_VERSION,
            seed,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn from_json(s: &str) -> serde_json::Result<Self> {
        serde_json::from_str(s)
    }

    /// Scalars as aligned `key  value` lines, arrays of records as tables.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        render(&mut out, "", &self.results);
        out
    }
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) if !s.contains('\n') => Some(s.clone()),
        Value::Array(xs) if xs.iter().all(|x| x.is_number() || x.is_boolean() || x.is_null()) => {
            Some(format!("[{}]", xs.iter().filter_map(scalar).collect::<Vec<_>>().join(" ")))
        }
        Value::Array(xs) if xs.iter().all(|x| x.as_str().is_some_and(|s| !s.contains(' '))) => {
            Some(format!("[{}]", xs.iter().filter_map(scalar).collect::<Vec<_>>().join(" ")))
        }
        _ => None,
    }
}

/// Multi-line strings and lists of strings, one line each.
fn block(v: &Value) -> Option<Vec<String>> {
    match v {
        Value::String(s) => Some(s.lines().map(String::from).collect()),
        Value::Array(xs) if xs.iter().all(Value::is_string) => {
            Some(xs.iter().map(|x| x.as_str().unwrap().to_string()).collect())
        }
        _ => None,
    }
}

fn render(out: &mut String, prefix: &str, v: &Value) {
    match v {
        Value::Object(map) => {
            let flat: Vec<(String, String)> =
                map.iter().filter_map(|(k, v)| scalar(v).map(|s| (format!("{prefix}{k}"), s))).collect();
            let w = flat.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
            for (k, s) in &flat {
                out.push_str(&format!("{k:<w$}  {s}\n"));
            }
            for (k, v) in map {
                if scalar(v).is_some() {
                    continue;
                }
                match block(v) {
                    Some(lines) => {
                        out.push_str(&format!("\n{prefix}{k}\n"));
                        for l in lines {
                            out.push_str(&format!("  {l}\n"));
                        }
                    }
                    None => render(out, &format!("{prefix}{k}."), v),
                }
            }
        }
        Value::Array(rows) if rows.iter().all(Value::is_object) => {
            out.push_str(&format!("\n{}\n", prefix.trim_end_matches('.')));
            table(out, rows);
        }
        Value::Array(rows) => {
            for (i, r) in rows.iter().enumerate() {
                render(out, &format!("{prefix}{i}."), r);
            }
        }
        other => out.push_str(&format!("{}  {}\n", prefix.trim_end_matches('.'), scalar(other).unwrap_or_default())),
    }
}

fn table(out: &mut String, rows: &[Value]) {
    let mut cols: Vec<String> = Vec::new();
    for r in rows {
        for k in r.as_object().unwrap().keys() {
            if !cols.contains(k) {
                cols.push(k.clone());
            }
        }
    }
    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            cols.iter()
                .map(|c| r.get(c).map(|v| scalar(v).unwrap_or_else(|| v.to_string())).unwrap_or_default())
                .collect()
        })
        .collect();
    let widths: Vec<usize> = cols
        .iter()
        .enumerate()
        .map(|(i, c)| cells.iter().map(|r| r[i].len()).chain([c.len()]).max().unwrap())
        .collect();
    let line = |xs: &[String]| -> String {
        let parts: Vec<String> = xs.iter().zip(&widths).map(|(x, w)| format!("{x:<w$}")).collect();
        format!("{}\n", parts.join("  ").trim_end())
    };
    out.push_str(&line(&cols));
    for r in &cells {
        out.push_str(&line(r));
    }
}
