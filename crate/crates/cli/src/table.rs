//! Aligned two-column text output: one row per scalar leaf of the JSON
//! document, keyed by its path (`F_gw_q[2]`, `diagnostics.L[0]`, ...).

use serde_json::Value;

use qmap_core::selfcheck::CheckResult;

/// `(path, value)` pairs for every scalar leaf, in document order.
pub fn flatten(doc: &Value) -> Vec<(String, String)> {
    let mut rows = Vec::new();
    walk(doc, String::new(), &mut rows);
    rows
}

fn walk(value: &Value, path: String, rows: &mut Vec<(String, String)>) {
    match value {
        Value::Object(map) => {
            for (k, v) in map {
                let p = if path.is_empty() {
                    k.clone()
                } else {
                    format!("{path}.{k}")
                };
                walk(v, p, rows);
            }
        }
        Value::Array(items) => {
            if items.is_empty() {
                rows.push((path.clone(), "[]".into()));
            }
            for (i, v) in items.iter().enumerate() {
                walk(v, format!("{path}[{i}]"), rows);
            }
        }
        Value::String(s) => rows.push((path, s.clone())),
        other => rows.push((path, other.to_string())),
    }
}

pub fn render(doc: &Value) -> String {
    let rows = flatten(doc);
    let width = rows
        .iter()
        .map(|(p, _)| p.len())
        .max()
        .unwrap_or(0)
        .max("field".len());
    let mut out = format!("{:<width$}  value\n", "field");
    for (path, value) in rows {
        out.push_str(&format!("{path:<width$}  {value}\n"));
    }
    out
}

/// Inverse of [`render`].
pub fn parse(text: &str) -> Vec<(String, String)> {
    text.lines()
        .skip(1)
        .filter_map(|line| {
            let (path, value) = line.split_once("  ")?;
            Some((path.trim_end().to_string(), value.trim().to_string()))
        })
        .collect()
}

pub fn render_checks(checks: &[CheckResult]) -> String {
    let mut out = String::new();
    for c in checks {
        let status = if c.passed { "PASS" } else { "FAIL" };
        out.push_str(&format!("[{status}] {}", c.name));
        if !c.detail.is_empty() {
            out.push_str(&format!("  ({})", c.detail));
        }
        out.push('\n');
    }
    let passed = checks.iter().filter(|c| c.passed).count();
    out.push_str(&format!("{passed}/{} checks passed\n", checks.len()));
    out
}
