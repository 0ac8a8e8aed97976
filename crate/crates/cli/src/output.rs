//! Rendering of command results as JSON, CSV or plain text.

use std::fmt;
use std::str::FromStr;

use clap::ValueEnum;
use modrep_core::{Caps, Error};
use serde::Serialize;
use serde_json::{json, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "text" => Ok(Format::Text),
            _ => Err(Error::Parse(format!("unknown format {s:?}"))),
        }
    }
}

#[derive(Serialize)]
struct CapsMeta {
    dim_cap: usize,
    word_cap: usize,
}

#[derive(Serialize)]
struct Meta<'a> {
    version: &'a str,
    command: &'a str,
    seed: u64,
    caps: CapsMeta,
}

/// The JSON envelope: the result plus the tool version, seed and caps.
pub fn envelope(command: &str, caps: &Caps, result: &Value) -> Value {
    let meta = Meta {
        version: env!("CARGO_PKG_VERSION"),
        command,
        seed: caps.seed,
        caps: CapsMeta { dim_cap: caps.dim_cap, word_cap: caps.word_cap },
    };
    json!({ "meta": meta, "result": result })
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Arrays of objects become one row per element with the union of keys as
/// header; an object becomes `key,value` rows; a scalar is one line.
pub fn to_csv(v: &Value) -> String {
    let mut out = String::new();
    match v {
        Value::Array(rows) if rows.iter().all(Value::is_object) && !rows.is_empty() => {
            let mut keys: Vec<String> = Vec::new();
            for r in rows {
                for k in r.as_object().expect("checked").keys() {
                    if !keys.contains(k) {
                        keys.push(k.clone());
                    }
                }
            }
            out.push_str(&keys.iter().map(|k| csv_field(k)).collect::<Vec<_>>().join(","));
            out.push('\n');
            for r in rows {
                let cells: Vec<String> = keys.iter().map(|k| csv_field(&scalar(r.get(k).unwrap_or(&Value::Null)))).collect();
                out.push_str(&cells.join(","));
                out.push('\n');
            }
        }
        Value::Object(m) => {
            out.push_str("key,value\n");
            for (k, x) in m {
                out.push_str(&format!("{},{}\n", csv_field(k), csv_field(&scalar(x))));
            }
        }
        Value::Array(items) => {
            for x in items {
                out.push_str(&csv_field(&scalar(x)));
                out.push('\n');
            }
        }
        other => {
            out.push_str(&csv_field(&scalar(other)));
            out.push('\n');
        }
    }
    out
}

pub fn to_text(v: &Value) -> String {
    match v {
        Value::Object(m) => m.iter().map(|(k, x)| format!("{k}: {}\n", scalar(x))).collect(),
        Value::Array(items) => items.iter().map(|x| format!("{}\n", scalar(x))).collect(),
        other => format!("{}\n", scalar(other)),
    }
}

/// What a command produced: structured data, optionally with its own text
/// and CSV renderings.
pub struct Report {
    pub value: Value,
    pub text: Option<String>,
    pub csv: Option<String>,
}

impl Report {
    pub fn new(value: Value) -> Self {
        Report { value, text: None, csv: None }
    }

    pub fn with_text(mut self, text: String) -> Self {
        self.text = Some(text);
        self
    }

    pub fn with_csv(mut self, csv: String) -> Self {
        self.csv = Some(csv);
        self
    }

    pub fn render(&self, format: Format, command: &str, caps: &Caps) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&envelope(command, caps, &self.value)).expect("values serialise");
                s.push('\n');
                s
            }
            Format::Csv => self.csv.clone().unwrap_or_else(|| to_csv(&self.value)),
            Format::Text => self.text.clone().unwrap_or_else(|| to_text(&self.value)),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Json => "json",
            Format::Csv => "csv",
            Format::Text => "text",
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_shapes() {
        assert_eq!(to_csv(&json!(16)), "16\n");
        assert_eq!(to_csv(&json!({"a": 1, "b": "x,y"})), "key,value\na,1\nb,\"x,y\"\n");
        assert_eq!(to_csv(&json!([{"a": 1}, {"a": 2, "b": true}])), "a,b\n1,\n2,true\n");
    }

    #[test]
    fn text_shapes() {
        assert_eq!(to_text(&json!("(5,1,1)")), "(5,1,1)\n");
        assert_eq!(to_text(&json!({"dim": 4})), "dim: 4\n");
    }

    #[test]
    fn envelope_carries_provenance() {
        let caps = Caps::default();
        let e = envelope("partition", &caps, &json!(1));
        assert_eq!(e["meta"]["seed"], 0);
        assert_eq!(e["meta"]["caps"]["dim_cap"], 4096);
        assert_eq!(e["meta"]["version"], env!("CARGO_PKG_VERSION"));
    }
}
