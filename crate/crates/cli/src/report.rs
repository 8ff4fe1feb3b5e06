use std::fmt::Write;

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

#[derive(Debug, Clone, Serialize)]
pub struct InputDigest {
    pub path: String,
    pub sha256: String,
}

impl InputDigest {
    pub fn of(path: &str, bytes: &[u8]) -> Self {
        InputDigest { path: path.to_string(), sha256: hex::encode(Sha256::digest(bytes)) }
    }
}

/// The document printed on stdout. Field order is fixed and nothing in it
/// depends on timing or thread count.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: String,
    pub inputs: Vec<InputDigest>,
    pub result: Value,
}

impl Report {
    pub fn render(&self, pretty: bool) -> String {
        if pretty {
            let mut out = String::new();
            writeln!(out, "command: {}", self.command).unwrap();
            for input in &self.inputs {
                writeln!(out, "input: {} (sha256 {})", input.path, &input.sha256[..16]).unwrap();
            }
            render_value(&mut out, &self.result, 0);
            out.trim_end().to_string()
        } else {
            serde_json::to_string(self).expect("serializable")
        }
    }
}

fn is_scalar(v: &Value) -> bool {
    !matches!(v, Value::Object(_) | Value::Array(_))
}

fn inline(v: &Value) -> Option<String> {
    match v {
        Value::Array(items) if items.iter().all(is_scalar) => {
            Some(format!("[{}]", items.iter().map(scalar_text).collect::<Vec<_>>().join(" ")))
        }
        Value::Array(items) if items.iter().all(|row| inline(row).is_some() && !row.is_object()) => {
            Some(items.iter().filter_map(inline).collect::<Vec<_>>().join(" "))
        }
        v if is_scalar(v) => Some(scalar_text(v)),
        _ => None,
    }
}

fn scalar_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        other => other.to_string(),
    }
}

fn render_value(out: &mut String, v: &Value, depth: usize) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(map) => {
            for (key, value) in map {
                match inline(value) {
                    Some(text) => writeln!(out, "{pad}{key}: {text}").unwrap(),
                    None => {
                        writeln!(out, "{pad}{key}:").unwrap();
                        render_value(out, value, depth + 1);
                    }
                }
            }
        }
        Value::Array(items) => {
            for (n, item) in items.iter().enumerate() {
                match inline(item) {
                    Some(text) => writeln!(out, "{pad}- {text}").unwrap(),
                    None => {
                        writeln!(out, "{pad}- #{}", n + 1).unwrap();
                        render_value(out, item, depth + 1);
                    }
                }
            }
        }
        scalar => writeln!(out, "{pad}{}", scalar_text(scalar)).unwrap(),
    }
}
