//! Report assembly and rendering. Everything is kept as ordered JSON values
//! so the text table and the `--json` output come from the same data.

use std::fmt::Write as _;

use serde_json::{json, Map, Value};

/// One result block, usually one per input form.
#[derive(Default)]
pub struct Section(Map<String, Value>);

impl Section {
    pub fn new() -> Self {
        Section::default()
    }

    pub fn put(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.0.insert(key.to_string(), value.into());
        self
    }

    /// Inserts into a nested object, creating it on first use.
    pub fn put_in(&mut self, group: &str, key: &str, value: impl Into<Value>) -> &mut Self {
        let entry = self.0.entry(group.to_string()).or_insert_with(|| Value::Object(Map::new()));
        if let Value::Object(m) = entry {
            m.insert(key.to_string(), value.into());
        }
        self
    }
}

pub struct Report {
    pub command: String,
    pub seed: u64,
    pub trials: usize,
    pub results: Vec<Section>,
    pub timing_ms: Option<f64>,
}

impl Report {
    pub fn to_json(&self) -> Value {
        let mut out = json!({
            "command": self.command,
            "seed": self.seed,
            "trials": self.trials,
            "results": self.results.iter().map(|s| Value::Object(s.0.clone())).collect::<Vec<_>>(),
        });
        if let Some(ms) = self.timing_ms {
            out["timing_ms"] = json!(ms);
        }
        out
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "command: {}", self.command);
        let _ = writeln!(out, "seed: {}", self.seed);
        for (i, s) in self.results.iter().enumerate() {
            if self.results.len() > 1 {
                let _ = writeln!(out, "--- [{}]", i + 1);
            }
            for (k, v) in &s.0 {
                write_entry(&mut out, k, v, 0);
            }
        }
        if let Some(ms) = self.timing_ms {
            let _ = writeln!(out, "time: {ms:.1} ms");
        }
        out
    }
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::String(s) => Some(s.clone()),
        Value::Null => Some("-".into()),
        Value::Bool(_) | Value::Number(_) => Some(v.to_string()),
        _ => None,
    }
}

/// Short arrays such as coefficient pairs, written on one line.
fn inline(v: &Value) -> Option<String> {
    match v {
        Value::Array(items) if items.len() <= 4 => {
            let parts: Option<Vec<String>> = items.iter().map(|x| scalar(x).or_else(|| inline(x))).collect();
            parts.map(|p| format!("[{}]", p.join(", ")))
        }
        _ => None,
    }
}

fn write_entry(out: &mut String, key: &str, v: &Value, depth: usize) {
    let pad = "  ".repeat(depth);
    if let Some(s) = scalar(v) {
        let _ = writeln!(out, "{pad}{key}: {s}");
        return;
    }
    match v {
        Value::Array(items) if items.iter().all(Value::is_number) => {
            let parts: Vec<String> = items.iter().map(|x| x.to_string()).collect();
            let _ = writeln!(out, "{pad}{key}: ({})", parts.join(","));
        }
        Value::Object(m) if key == "matrices" => {
            let _ = writeln!(out, "{pad}{key}:");
            for (k, x) in m {
                let _ = writeln!(out, "{pad}  {k}:");
                write_grid(out, x, depth + 2);
            }
        }
        Value::Array(_) if inline(v).is_some() => {
            let _ = writeln!(out, "{pad}{key}: {}", inline(v).unwrap_or_default());
        }
        Value::Array(items) if items.iter().all(|x| scalar(x).is_some()) => {
            let _ = writeln!(out, "{pad}{key}:");
            for x in items {
                let _ = writeln!(out, "{pad}  {}", scalar(x).unwrap_or_default());
            }
        }
        Value::Array(items) => {
            let _ = writeln!(out, "{pad}{key}:");
            for (i, x) in items.iter().enumerate() {
                write_entry(out, &format!("[{i}]"), x, depth + 1);
            }
        }
        Value::Object(m) => {
            let _ = writeln!(out, "{pad}{key}:");
            for (k, x) in m {
                write_entry(out, k, x, depth + 1);
            }
        }
        _ => unreachable!("scalars handled above"),
    }
}

fn write_grid(out: &mut String, v: &Value, depth: usize) {
    let Value::Array(rows) = v else { return };
    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|r| match r {
            Value::Array(c) => c.iter().filter_map(scalar).collect(),
            _ => Vec::new(),
        })
        .collect();
    let width = cells.iter().flatten().map(String::len).max().unwrap_or(0);
    let pad = "  ".repeat(depth);
    for row in cells {
        let line: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
        let _ = writeln!(out, "{pad}[ {} ]", line.join("  "));
    }
}
