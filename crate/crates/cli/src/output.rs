use serde::Serialize;
use serde_json::{json, Value};

use quatlattice::verification::Certificate;

/// Bumped whenever a JSON layout under `schemas/` changes.
pub const SCHEMA_VERSION: u32 = 1;

pub fn envelope(command: &str, body: impl Serialize) -> Value {
    let mut v = json!({ "schema_version": SCHEMA_VERSION, "command": command });
    if let Value::Object(extra) = serde_json::to_value(body).expect("serializable") {
        v.as_object_mut().expect("object").extend(extra);
    }
    v
}

pub fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn mark(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

pub fn certificate_table(certs: &[Certificate]) -> String {
    let mut out = String::new();
    for c in certs {
        out.push_str(&format!("{}  {}\n", mark(c.passed), c.name));
        for item in &c.items {
            if item.detail.is_empty() {
                out.push_str(&format!("      {}  {}\n", mark(item.passed), item.name));
            } else {
                out.push_str(&format!(
                    "      {}  {}  [{}]\n",
                    mark(item.passed),
                    item.name,
                    item.detail
                ));
            }
        }
    }
    let passed = certs.iter().filter(|c| c.passed).count();
    out.push_str(&format!("{passed}/{} certificates passed\n", certs.len()));
    out
}

pub fn rows(pairs: &[(&str, String)]) -> String {
    let width = pairs
        .iter()
        .map(|(k, _)| k.chars().count())
        .max()
        .unwrap_or(0);
    pairs
        .iter()
        .map(|(k, v)| format!("{k:<width$}  {v}\n"))
        .collect()
}
