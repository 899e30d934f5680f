use std::fmt;

use serde::Serialize;
use serde_json::{json, Value};
use tlss::TlssError;

/// Failure of a command, mapped to the process exit code.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Data(String),
    Numerical(String),
}

impl CliError {
    pub fn code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Data(_) => 3,
            CliError::Numerical(_) => 4,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Data(m) => write!(f, "{m}"),
            CliError::Numerical(m) => write!(f, "numerical failure: {m}"),
        }
    }
}

impl From<TlssError> for CliError {
    fn from(e: TlssError) -> Self {
        let msg = e.to_string();
        match e {
            TlssError::Domain(_)
            | TlssError::InvalidParameter { .. }
            | TlssError::SeriesRange { .. }
            | TlssError::MomentNonexistence(_) => CliError::Usage(msg),
            TlssError::Support { .. }
            | TlssError::Data(_)
            | TlssError::DataLine { .. }
            | TlssError::Io(_) => CliError::Data(msg),
            TlssError::Singularity(_)
            | TlssError::Stencil { .. }
            | TlssError::Quadrature { .. } => CliError::Numerical(msg),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

/// The JSON envelope shared by every command.
pub fn envelope(
    command: &str,
    inputs: &impl Serialize,
    results: Value,
    diagnostics: &[String],
) -> String {
    let doc = json!({
        "command": command,
        "inputs": inputs,
        "results": results,
        "diagnostics": diagnostics,
    });
    let mut s = serde_json::to_string_pretty(&doc).expect("json values serialize");
    s.push('\n');
    s
}

/// CSV with the given header; numbers use the shortest round-trip form.
pub fn csv_table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for r in rows {
        w.write_record(r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 fields")
}

/// Right-aligned columns for human reading; floats are rounded to 4 decimals.
pub fn text_table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for r in rows {
        for (w, c) in widths.iter_mut().zip(r) {
            *w = (*w).max(c.len());
        }
    }
    let line = |cells: Vec<&str>| -> String {
        let parts: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:>w$}"))
            .collect();
        parts.join("  ").trim_end().to_string() + "\n"
    };
    let mut out = line(header.to_vec());
    for r in rows {
        out.push_str(&line(r.iter().map(String::as_str).collect()));
    }
    out
}

pub fn num(v: f64) -> String {
    tlss::data::format_number(v)
}

pub fn num4(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.4}")
    } else {
        format!("{v}")
    }
}

/// JSON number, or null when not finite.
pub fn jnum(v: f64) -> Value {
    serde_json::Number::from_f64(v).map_or(Value::Null, Value::Number)
}
