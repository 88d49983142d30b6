//! Indented plain-text view of a JSON report.

use serde_json::Value;

const WIDTH: usize = 88;

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(if *b { "yes" } else { "no" }.into()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        _ => None,
    }
}

/// Short arrays of scalars (degrees, matrices) stay on one line.
fn inline(v: &Value) -> Option<String> {
    if let Some(s) = scalar(v) {
        return Some(s);
    }
    let Value::Array(items) = v else {
        return None;
    };
    let parts: Option<Vec<String>> = items.iter().map(inline).collect();
    let s = format!("[{}]", parts?.join(", "));
    (s.len() <= WIDTH).then_some(s)
}

fn write(out: &mut String, v: &Value, depth: usize) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                match inline(x) {
                    Some(s) => out.push_str(&format!("{pad}{k}: {s}\n")),
                    None if x.as_object().is_some_and(|o| o.is_empty()) => {
                        out.push_str(&format!("{pad}{k}: -\n"))
                    }
                    None => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        write(out, x, depth + 1);
                    }
                }
            }
        }
        Value::Array(items) => {
            for x in items {
                match inline(x) {
                    Some(s) => out.push_str(&format!("{pad}- {s}\n")),
                    None => {
                        // The first nested line carries the dash.
                        let mut inner = String::new();
                        write(&mut inner, x, depth + 1);
                        out.push_str(&pad);
                        out.push_str("- ");
                        out.push_str(&inner[pad.len() + 2..]);
                    }
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", scalar(other).unwrap_or_default())),
    }
}

pub fn human(report: &Value) -> String {
    let mut out = String::new();
    write(&mut out, report, 0);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn nests_objects_and_inlines_short_arrays() {
        let v = json!({"a": {"b": [1, 2], "c": true}, "d": [], "e": {}});
        assert_eq!(human(&v), "a:\n  b: [1, 2]\n  c: yes\nd: []\ne: -\n");
    }

    #[test]
    fn list_items_start_with_a_dash() {
        let v = json!({"xs": [{"k": 1, "v": "a"}, {"k": 2, "v": "b"}]});
        assert_eq!(human(&v), "xs:\n  - k: 1\n    v: a\n  - k: 2\n    v: b\n");
    }
}
