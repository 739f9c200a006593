//! Result documents: ordered key-value output rendered as text or JSON.

use std::fmt::Write as _;

use num_bigint::BigInt;
use serde_json::{Map, Number, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Machine,
}

#[derive(Debug, Default)]
pub struct Report {
    fields: Map<String, Value>,
    /// A configuration in graph-file syntax. In text mode it is printed after
    /// the fields, which become comments so the output parses as a file.
    drc: Option<String>,
}

pub fn num(x: &BigInt) -> Value {
    Value::Number(x.to_string().parse::<Number>().expect("decimal integer"))
}

pub fn nums<'a>(xs: impl IntoIterator<Item = &'a BigInt>) -> Value {
    Value::Array(xs.into_iter().map(num).collect())
}

pub fn answer(yes: bool) -> Value {
    Value::String(if yes { "yes" } else { "no" }.into())
}

impl Report {
    pub fn new() -> Self {
        Report::default()
    }

    pub fn field(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.fields.insert(key.to_string(), value.into());
        self
    }

    /// Adds the fields of `other` after the existing ones.
    pub fn append(mut self, other: Report) -> Self {
        self.fields.extend(other.fields);
        self.drc = other.drc.or(self.drc);
        self
    }

    pub fn drc(mut self, text: String) -> Self {
        self.drc = Some(text);
        self
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Machine => {
                let mut obj = self.fields.clone();
                if let Some(d) = &self.drc {
                    obj.insert("drc".into(), Value::String(d.clone()));
                }
                let mut s = serde_json::to_string_pretty(&Value::Object(obj)).expect("serializable");
                s.push('\n');
                s
            }
            Format::Text => {
                let prefix = if self.drc.is_some() { "# " } else { "" };
                let mut s = String::new();
                for (k, v) in &self.fields {
                    match v {
                        Value::Array(rows) if rows.iter().any(Value::is_array) => {
                            writeln!(s, "{prefix}{k}:").unwrap();
                            for row in rows {
                                writeln!(s, "{prefix}  {}", text(row)).unwrap();
                            }
                        }
                        _ => writeln!(s, "{prefix}{k}: {}", text(v)).unwrap(),
                    }
                }
                if let Some(d) = &self.drc {
                    s.push_str(d);
                }
                s
            }
        }
    }
}

fn text(v: &Value) -> String {
    match v {
        Value::Null => "-".into(),
        Value::Bool(b) => if *b { "yes" } else { "no" }.into(),
        Value::Number(n) => n.to_string(),
        Value::String(s) => s.clone(),
        Value::Array(items) => items.iter().map(text).collect::<Vec<_>>().join(" "),
        Value::Object(map) => map
            .iter()
            .map(|(k, v)| format!("{k}={}", text(v)))
            .collect::<Vec<_>>()
            .join(" "),
    }
}
