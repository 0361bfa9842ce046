//! Reports emitted by the command-line front end. Integers are JSON
//! numbers of arbitrary size, rationals are `"p/q"` strings, and key order
//! is insertion order, so machine output is byte-stable.

use std::fmt::Write as _;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use serde_json::{Map, Number, Value};

use crate::exact::rational_to_string;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Report {
    pub command: String,
    pub input: Map<String, Value>,
    pub results: Map<String, Value>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub verdict: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub warnings: Vec<String>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report {
            command: command.into(),
            input: Map::new(),
            results: Map::new(),
            verdict: None,
            warnings: Vec::new(),
        }
    }

    pub fn input(&mut self, key: &str, value: Value) -> &mut Self {
        self.input.insert(key.into(), value);
        self
    }

    pub fn set(&mut self, key: &str, value: Value) -> &mut Self {
        self.results.insert(key.into(), value);
        self
    }

    pub fn warn(&mut self, msg: impl Into<String>) -> &mut Self {
        self.warnings.push(msg.into());
        self
    }

    pub fn to_machine(&self) -> String {
        let mut s =
            serde_json::to_string_pretty(self).expect("report values are always serializable");
        s.push('\n');
        s
    }

    pub fn from_machine(src: &str) -> Result<Report, serde_json::Error> {
        serde_json::from_str(src)
    }

    pub fn to_human(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "== {} ==", self.command);
        if !self.input.is_empty() {
            let _ = writeln!(out, "input:");
            render_map(&mut out, &self.input, 1);
        }
        let _ = writeln!(out, "results:");
        render_map(&mut out, &self.results, 1);
        if let Some(v) = &self.verdict {
            let _ = writeln!(out, "verdict: {v}");
        }
        for w in &self.warnings {
            let _ = writeln!(out, "warning: {w}");
        }
        out
    }
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Object(m) if m.is_empty() => Some("{}".into()),
        Value::Array(items) if items.iter().all(|i| scalar(i).is_some() && !i.is_array()) => {
            Some(format!(
                "[{}]",
                items
                    .iter()
                    .filter_map(scalar)
                    .collect::<Vec<_>>()
                    .join(", ")
            ))
        }
        _ => None,
    }
}

fn render_map(out: &mut String, map: &Map<String, Value>, depth: usize) {
    let pad = "  ".repeat(depth);
    for (k, v) in map {
        if let Some(s) = scalar(v) {
            let _ = writeln!(out, "{pad}{k}: {s}");
            continue;
        }
        match v {
            Value::Object(inner) => {
                let _ = writeln!(out, "{pad}{k}:");
                render_map(out, inner, depth + 1);
            }
            Value::Array(rows) if rows.iter().all(Value::is_object) => {
                let _ = writeln!(out, "{pad}{k}:");
                render_table(out, rows, depth + 1);
            }
            Value::Array(rows) => {
                let _ = writeln!(out, "{pad}{k}:");
                for r in rows {
                    let _ = writeln!(
                        out,
                        "{pad}  - {}",
                        scalar(r).unwrap_or_else(|| r.to_string())
                    );
                }
            }
            _ => unreachable!("scalars handled above"),
        }
    }
}

fn render_table(out: &mut String, rows: &[Value], depth: usize) {
    let pad = "  ".repeat(depth);
    let mut headers: Vec<String> = Vec::new();
    for r in rows {
        for k in r.as_object().expect("rows are objects").keys() {
            if !headers.contains(k) {
                headers.push(k.clone());
            }
        }
    }
    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            let obj = r.as_object().expect("rows are objects");
            headers
                .iter()
                .map(|h| {
                    obj.get(h)
                        .map(|v| scalar(v).unwrap_or_else(|| v.to_string()))
                        .unwrap_or_default()
                })
                .collect()
        })
        .collect();
    let widths: Vec<usize> = headers
        .iter()
        .enumerate()
        .map(|(i, h)| {
            cells
                .iter()
                .map(|c| c[i].chars().count())
                .chain([h.chars().count()])
                .max()
                .unwrap_or(0)
        })
        .collect();
    let line = |items: &[String]| {
        items
            .iter()
            .zip(&widths)
            .map(|(s, w)| format!("{s:<w$}"))
            .collect::<Vec<_>>()
            .join("  ")
            .trim_end()
            .to_string()
    };
    let _ = writeln!(out, "{pad}{}", line(&headers));
    for c in &cells {
        let _ = writeln!(out, "{pad}{}", line(c));
    }
}

pub fn big(n: &BigInt) -> Value {
    Value::Number(Number::from_str(&n.to_string()).expect("integer literal"))
}

pub fn num<T: Into<BigInt>>(n: T) -> Value {
    big(&n.into())
}

pub fn ratio(r: &BigRational) -> Value {
    Value::String(rational_to_string(r))
}

pub fn text(s: impl Into<String>) -> Value {
    Value::String(s.into())
}

pub fn list<T, F: Fn(&T) -> Value>(items: &[T], f: F) -> Value {
    Value::Array(items.iter().map(f).collect())
}

pub fn obj(pairs: Vec<(&str, Value)>) -> Value {
    Value::Object(pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn sample() -> Report {
        let mut r = Report::new("sample");
        r.input("m", num(3));
        r.set("huge", big(&BigInt::from(10).pow(40)))
            .set("margin", ratio(&rat(16, 3)))
            .set(
                "rows",
                Value::Array(vec![obj(vec![("id", num(1)), ("alpha", num(2))])]),
            )
            .set("nested", obj(vec![("z", list(&[1i64, 2, 3], |&x| num(x)))]));
        r.verdict = Some("holds".into());
        r.warn("note");
        r
    }

    #[test]
    fn machine_round_trip() {
        let r = sample();
        let text = r.to_machine();
        assert_eq!(Report::from_machine(&text).unwrap(), r);
        assert_eq!(Report::from_machine(&text).unwrap().to_machine(), text);
        assert!(text.contains("10000000000000000000000000000000000000000"));
        assert!(text.contains("\"16/3\""));
    }

    #[test]
    fn unknown_keys_rejected() {
        let bad = r#"{"command":"x","input":{},"results":{},"extra":1}"#;
        assert!(Report::from_machine(bad).is_err());
    }

    #[test]
    fn human_rendering() {
        let h = sample().to_human();
        assert!(h.contains("margin: 16/3"));
        assert!(h.contains("id  alpha"));
        assert!(h.contains("z: [1, 2, 3]"));
        assert!(h.contains("verdict: holds"));
    }
}
