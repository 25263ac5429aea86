//! Markdown rendering of command output. Rendering is one-way; JSON remains
//! the interchange format.

use std::fmt::Write;

use serde_json::Value;

fn is_matrix(v: &Value) -> bool {
    v.get("rows").is_some() && v.get("cols").is_some() && v.get("entries").is_some_and(Value::is_array)
}

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "—".into(),
        other => other.to_string(),
    }
    .replace('|', "\\|")
}

fn matrix_table(v: &Value, out: &mut String) {
    let rows: Vec<&Vec<Value>> = v["entries"].as_array().into_iter().flatten().filter_map(Value::as_array).collect();
    let cols = v["cols"].as_u64().unwrap_or(0) as usize;
    let header: Vec<String> = (1..=cols).map(|j| j.to_string()).collect();
    let _ = writeln!(out, "| | {} |", header.join(" | "));
    let _ = writeln!(out, "|---|{}", "---|".repeat(cols));
    for (i, r) in rows.iter().enumerate() {
        let cells: Vec<String> = r.iter().map(cell).collect();
        let _ = writeln!(out, "| **{}** | {} |", i + 1, cells.join(" | "));
    }
}

/// Objects become key/value tables with matrices rendered as their own
/// tables; scalars are printed as they are.
pub fn markdown(v: &Value) -> String {
    let mut out = String::new();
    match v {
        Value::Object(_) if is_matrix(v) => matrix_table(v, &mut out),
        Value::Object(map) => {
            let mut matrices = Vec::new();
            let _ = writeln!(out, "| key | value |");
            let _ = writeln!(out, "|---|---|");
            for (k, x) in map {
                if is_matrix(x) {
                    matrices.push((k, x));
                    let _ = writeln!(out, "| {k} | see below |");
                } else {
                    let _ = writeln!(out, "| {k} | {} |", cell(x));
                }
            }
            for (k, m) in matrices {
                let _ = writeln!(out, "\n**{k}**\n");
                matrix_table(m, &mut out);
            }
        }
        other => {
            let _ = writeln!(out, "{}", cell(other));
        }
    }
    out
}
