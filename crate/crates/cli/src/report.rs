use std::fmt::Write as _;

use clap::ValueEnum;
use serde_json::Value;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutFormat {
    Json,
    Tsv,
    Text,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    BadInput(String),
    #[error("{0}")]
    ScenarioFailure(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::BadInput(_) => 2,
            CliError::ScenarioFailure(_) => 1,
        }
    }
}

/// Library errors are all caused by the input.
pub fn bad<E: std::fmt::Display>(e: E) -> CliError {
    CliError::BadInput(e.to_string())
}

/// A command result. `ok` is false when a check or sweep found a
/// counterexample.
#[derive(Debug, Clone)]
pub struct Report {
    pub value: Value,
    pub tsv: Option<String>,
    pub ok: bool,
}

impl Report {
    pub fn new(value: Value) -> Self {
        Report { value, tsv: None, ok: true }
    }

    pub fn checked(value: Value, ok: bool) -> Self {
        Report { value, tsv: None, ok }
    }

    pub fn with_tsv(mut self, tsv: String) -> Self {
        self.tsv = Some(tsv);
        self
    }

    pub fn render(&self, fmt: OutFormat) -> String {
        match fmt {
            OutFormat::Json => {
                let mut s = serde_json::to_string_pretty(&self.value).expect("report serializes");
                s.push('\n');
                s
            }
            OutFormat::Tsv => self.tsv.clone().unwrap_or_else(|| flat_tsv(&self.value)),
            OutFormat::Text => {
                let mut s = String::new();
                text(&self.value, 0, &mut s);
                s
            }
        }
    }
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::String(s) => Some(s.clone()),
        Value::Array(_) | Value::Object(_) => None,
        other => Some(other.to_string()),
    }
}

fn text(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                match scalar(x) {
                    Some(s) => writeln!(out, "{pad}{k}: {s}").unwrap(),
                    None => {
                        writeln!(out, "{pad}{k}:").unwrap();
                        text(x, indent + 1, out);
                    }
                }
            }
        }
        Value::Array(xs) => {
            if xs.iter().all(|x| scalar(x).is_some()) {
                let row: Vec<String> = xs.iter().filter_map(scalar).collect();
                writeln!(out, "{pad}[{}]", row.join(", ")).unwrap();
            } else {
                for x in xs {
                    writeln!(out, "{pad}-").unwrap();
                    text(x, indent + 1, out);
                }
            }
        }
        other => writeln!(out, "{pad}{}", scalar(other).unwrap_or_default()).unwrap(),
    }
}

/// `path\tvalue` for every scalar leaf.
fn flat_tsv(v: &Value) -> String {
    fn go(v: &Value, path: &str, out: &mut String) {
        match v {
            Value::Object(map) => {
                for (k, x) in map {
                    go(x, &join(path, k), out);
                }
            }
            Value::Array(xs) => {
                for (i, x) in xs.iter().enumerate() {
                    go(x, &join(path, &i.to_string()), out);
                }
            }
            other => writeln!(out, "{path}\t{}", scalar(other).unwrap_or_default()).unwrap(),
        }
    }
    fn join(a: &str, b: &str) -> String {
        if a.is_empty() {
            b.to_string()
        } else {
            format!("{a}.{b}")
        }
    }
    let mut out = String::from("key\tvalue\n");
    go(v, "", &mut out);
    out
}
