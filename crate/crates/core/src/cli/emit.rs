use serde_json::Value;

use super::OutputReport;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

/// Deterministic serialization: JSON keys are sorted, text follows the
/// same order.
pub fn emit(report: &OutputReport, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&report.to_json()).expect("serializable");
            s.push('\n');
            s
        }
        Format::Text => text(report),
    }
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("none".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(a) if a.is_empty() => Some("(none)".into()),
        _ => None,
    }
}

fn walk(v: &Value, indent: usize, out: &mut String) {
    let pad = " ".repeat(indent);
    match v {
        Value::Object(map) => {
            for (k, item) in map {
                match scalar(item) {
                    Some(s) => out.push_str(&format!("{pad}{k}: {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        walk(item, indent + 2, out);
                    }
                }
            }
        }
        Value::Array(items) => {
            for item in items {
                match scalar(item) {
                    Some(s) => out.push_str(&format!("{pad}- {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}-\n"));
                        walk(item, indent + 2, out);
                    }
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", scalar(other).unwrap_or_default())),
    }
}

fn text(r: &OutputReport) -> String {
    let weights: Vec<String> = r.weights.iter().map(u32::to_string).collect();
    let mut out = format!(
        "command: {}\nf: {}\nvars: {} (weights {})\nmu: {}\ntau: {}\nmu_hyperplane: {}\nquasi_homogeneous: {}\n",
        r.command,
        r.f,
        r.vars.join(", "),
        weights.join(", "),
        r.mu,
        r.tau,
        r.mu_hyperplane,
        r.quasi_homogeneous
    );
    out.push_str("payload:\n");
    walk(&r.payload, 2, &mut out);
    if r.warnings.is_empty() {
        out.push_str("warnings: none\n");
    } else {
        out.push_str("warnings:\n");
        for w in &r.warnings {
            out.push_str(&format!("  - {w}\n"));
        }
    }
    out
}
