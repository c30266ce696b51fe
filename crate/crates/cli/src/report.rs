//! Run reports and their JSON / text rendering.

use serde::Serialize;
use serde_json::{Map, Value};

/// Output precision: reported floats are snapped to this grid so that
/// last-bit noise does not leak into golden files.
const GRID: f64 = 1e12;

#[derive(Debug, Clone, Serialize)]
pub struct CommandEcho {
    pub name: String,
    pub args: Vec<String>,
}

/// The machine-readable outcome of one command. Field order is fixed by
/// declaration order.
#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub command: CommandEcho,
    pub tolerance: f64,
    pub result: Value,
    pub exit_code: i32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum OutputFormat {
    Json,
    Text,
}

pub fn snap(x: f64) -> f64 {
    if !x.is_finite() {
        return x;
    }
    // `+ 0.0` turns a negative zero into a positive one
    (x * GRID).round() / GRID + 0.0
}

fn snap_value(v: Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = snap(n.as_f64().expect("f64 number"));
            serde_json::Number::from_f64(x).map_or(Value::Null, Value::Number)
        }
        Value::Array(items) => Value::Array(items.into_iter().map(snap_value).collect()),
        Value::Object(map) => {
            Value::Object(map.into_iter().map(|(k, v)| (k, snap_value(v))).collect())
        }
        other => other,
    }
}

impl RunReport {
    pub fn render(&self, format: OutputFormat) -> String {
        let value = snap_value(serde_json::to_value(self).expect("report serializes"));
        match format {
            OutputFormat::Json => {
                let mut s = serde_json::to_string_pretty(&value).expect("value serializes");
                s.push('\n');
                s
            }
            OutputFormat::Text => {
                let mut out = String::new();
                if let Value::Object(map) = &value {
                    write_object(&mut out, map, 0);
                }
                out
            }
        }
    }
}

fn is_scalar_tree(v: &Value) -> bool {
    match v {
        Value::Object(_) => false,
        Value::Array(items) => items.iter().all(is_scalar_tree),
        _ => true,
    }
}

fn inline(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn write_object(out: &mut String, map: &Map<String, Value>, depth: usize) {
    let pad = "  ".repeat(depth);
    for (key, value) in map {
        if is_scalar_tree(value) {
            out.push_str(&format!("{pad}{key}: {}\n", inline(value)));
            continue;
        }
        out.push_str(&format!("{pad}{key}:\n"));
        match value {
            Value::Object(inner) => write_object(out, inner, depth + 1),
            Value::Array(items) => {
                for (i, item) in items.iter().enumerate() {
                    match item {
                        Value::Object(inner) => {
                            out.push_str(&format!("{pad}  [{i}]\n"));
                            write_object(out, inner, depth + 2);
                        }
                        other => out.push_str(&format!("{pad}  [{i}] {}\n", inline(other))),
                    }
                }
            }
            _ => unreachable!("scalars are handled above"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn snapping_removes_noise_and_negative_zero() {
        assert_eq!(snap(0.5000000000000001), 0.5);
        assert_eq!(snap(-1e-17).to_bits(), 0f64.to_bits());
        assert_eq!(snap(2.0 / 3.0), 0.666666666667);
    }

    #[test]
    fn field_order_is_stable() {
        let report = RunReport {
            command: CommandEcho {
                name: "x".into(),
                args: vec![],
            },
            tolerance: 1e-9,
            result: json!({"zeta": 1, "alpha": [0.1, 0.2]}),
            exit_code: 0,
        };
        let s = report.render(OutputFormat::Json);
        let keys = [
            "\"command\"",
            "\"tolerance\"",
            "\"result\"",
            "\"zeta\"",
            "\"alpha\"",
            "\"exit_code\"",
        ];
        let positions: Vec<usize> = keys.iter().map(|k| s.find(k).unwrap()).collect();
        assert!(positions.windows(2).all(|w| w[0] < w[1]), "{s}");
        let text = report.render(OutputFormat::Text);
        assert!(
            text.contains("tolerance: 0.000000001\n") || text.contains("tolerance: 1e-9\n"),
            "{text}"
        );
        assert!(text.contains("  alpha: [0.1,0.2]\n"), "{text}");
    }
}
