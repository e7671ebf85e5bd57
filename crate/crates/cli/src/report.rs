//! Text rendering of JSON reports: one `key: value` line per scalar, nested
//! keys joined with dots. Equation files (`file` keys) appear in JSON only.

use serde_json::Value;

pub fn render_text(value: &Value) -> String {
    let mut out = String::new();
    walk("", value, &mut out);
    out
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("none".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        _ => None,
    }
}

fn walk(key: &str, value: &Value, out: &mut String) {
    let join = |k: &str| {
        if key.is_empty() {
            k.to_string()
        } else {
            format!("{key}.{k}")
        }
    };
    match value {
        Value::Object(map) => {
            for (k, v) in map.iter().filter(|(k, _)| k.as_str() != "file") {
                walk(&join(k), v, out);
            }
        }
        Value::Array(items) => {
            if items.is_empty() {
                out.push_str(&format!("{key}: []\n"));
            } else if let Some(flat) = items.iter().map(scalar).collect::<Option<Vec<_>>>() {
                if flat.iter().any(|s| s.contains(' ')) {
                    out.push_str(&format!("{key}:\n"));
                    for s in flat {
                        out.push_str(&format!("  {s}\n"));
                    }
                } else {
                    out.push_str(&format!("{key}: {}\n", flat.join(", ")));
                }
            } else {
                for (i, v) in items.iter().enumerate() {
                    walk(&format!("{key}[{i}]"), v, out);
                }
            }
        }
        v => out.push_str(&format!("{key}: {}\n", scalar(v).expect("scalar"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn flattens_nested_values() {
        let v = json!({"a": 1, "b": {"c": [1, 2], "d": null, "file": 3}, "e": ["x y", "z"]});
        assert_eq!(
            render_text(&v),
            "a: 1\nb.c: 1, 2\nb.d: none\ne:\n  x y\n  z\n"
        );
    }
}
