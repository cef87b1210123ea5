use std::fmt::Write as _;

use firstsplit::Error;
use serde_json::{json, Map, Value};

pub const SCHEMA_VERSION: u32 = 1;

pub mod exit {
    pub const OK: i32 = 0;
    pub const PROPERTY: i32 = 1;
    pub const PARSE: i32 = 2;
    pub const LIMITS: i32 = 3;
    pub const GENOMES: i32 = 4;
    pub const IO: i32 = 5;
    pub const USAGE: i32 = 6;
}

#[derive(Debug)]
pub enum CliError {
    Core(Error),
    Io { path: String, message: String },
    Usage(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl CliError {
    pub fn io(path: &std::path::Path, e: std::io::Error) -> Self {
        CliError::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) => match e {
                Error::Syntax { .. }
                | Error::NonBinary { .. }
                | Error::UnaryVertex { .. }
                | Error::EmptyInput
                | Error::EmptyForest
                | Error::InvalidName(_)
                | Error::DuplicateSpeciesLeaf(_)
                | Error::TooFewGenomes(_) => exit::PARSE,
                Error::LimitExceeded { .. } => exit::LIMITS,
                Error::GenomeNotInSpecies(_) | Error::UnknownGenome(_) => exit::GENOMES,
                _ => exit::USAGE,
            },
            CliError::Io { .. } => exit::IO,
            CliError::Usage(_) => exit::USAGE,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self.exit_code() {
            exit::PARSE => "input",
            exit::LIMITS => "limits",
            exit::GENOMES => "genomes",
            exit::IO => "io",
            _ => "usage",
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Io { path, message } => write!(f, "{path}: {message}"),
            CliError::Usage(m) => write!(f, "{m}"),
        }
    }
}

/// What a command hands back to the driver.
pub struct Outcome {
    pub input: Option<Value>,
    pub result: Value,
    /// Set when an asserted property failed; the run exits with status 1.
    pub failure: Option<String>,
}

impl Outcome {
    pub fn new(input: Option<Value>, result: Value) -> Self {
        Outcome {
            input,
            result,
            failure: None,
        }
    }
}

pub fn document(command: Value, outcome: &Outcome, timing_ms: Option<f64>) -> Value {
    let mut doc = Map::new();
    doc.insert("tool".into(), json!("firstsplit"));
    doc.insert("version".into(), json!(env!("CARGO_PKG_VERSION")));
    doc.insert("schema".into(), json!(SCHEMA_VERSION));
    doc.insert("command".into(), command);
    doc.insert("input".into(), outcome.input.clone().unwrap_or(Value::Null));
    doc.insert("result".into(), outcome.result.clone());
    doc.insert(
        "status".into(),
        match &outcome.failure {
            None => json!({"ok": true}),
            Some(m) => json!({"ok": false, "failure": m}),
        },
    );
    if let Some(ms) = timing_ms {
        doc.insert("timing_ms".into(), json!(ms));
    }
    Value::Object(doc)
}

pub fn error_document(command: Value, err: &CliError) -> Value {
    json!({
        "tool": "firstsplit",
        "version": env!("CARGO_PKG_VERSION"),
        "schema": SCHEMA_VERSION,
        "command": command,
        "error": {"kind": err.kind(), "exit_code": err.exit_code(), "message": err.to_string()},
    })
}

fn inline(v: &Value) -> String {
    match v {
        Value::String(s) if !s.contains('\n') => s.clone(),
        Value::Null => "-".into(),
        other => other.to_string(),
    }
}

fn holds_objects(v: &Value) -> bool {
    matches!(v, Value::Array(items) if items.iter().any(|i| i.is_object()))
}

fn walk(out: &mut String, path: &str, v: &Value) {
    match v {
        Value::Object(map) => {
            for (k, child) in map {
                let p = if path.is_empty() {
                    k.clone()
                } else {
                    format!("{path}.{k}")
                };
                walk(out, &p, child);
            }
        }
        Value::Array(items) if holds_objects(v) => {
            if items.is_empty() {
                let _ = writeln!(out, "{path}: []");
            }
            for (i, child) in items.iter().enumerate() {
                walk(out, &format!("{path}[{i}]"), child);
            }
        }
        Value::String(s) if s.contains('\n') => {
            let _ = writeln!(out, "{path}:");
            for line in s.lines() {
                let _ = writeln!(out, "  {line}");
            }
        }
        scalar => {
            let _ = writeln!(out, "{path}: {}", inline(scalar));
        }
    }
}

/// One `dotted.key: value` line per leaf of the document.
pub fn render_text(doc: &Value) -> String {
    let mut out = String::new();
    walk(&mut out, "", doc);
    out
}

pub fn render(doc: &Value, format: crate::args::Format) -> String {
    match format {
        crate::args::Format::Text => render_text(doc),
        crate::args::Format::Json => {
            let mut s = serde_json::to_string_pretty(doc).expect("serializable");
            s.push('\n');
            s
        }
    }
}
