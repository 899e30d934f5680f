//! Datasets of possibly left-censored observations.
//!
//! Input is CSV with a header row: `value` alone, or `value,censored` where
//! the flag is 0 or 1. Line numbers in errors count the header as line 1.

use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::error::{Result, TlssError};
use crate::fit::Observation;

/// Environment variable naming the default directory for datasets.
pub const DATA_DIR_ENV: &str = "TLSS_DATA_DIR";

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DatasetFile {
    pub path: PathBuf,
    pub rows: Vec<Observation>,
    pub name: String,
}

impl DatasetFile {
    pub fn censored_count(&self) -> usize {
        self.rows.iter().filter(|o| o.censored).count()
    }
}

/// Resolves `path` directly, then relative to `$TLSS_DATA_DIR`.
pub fn resolve_path(path: &Path) -> PathBuf {
    if path.exists() || path.is_absolute() {
        return path.to_path_buf();
    }
    match std::env::var_os(DATA_DIR_ENV) {
        Some(dir) => {
            let candidate = Path::new(&dir).join(path);
            if candidate.exists() {
                candidate
            } else {
                path.to_path_buf()
            }
        }
        None => path.to_path_buf(),
    }
}

pub fn parse_dataset(path: &Path) -> Result<DatasetFile> {
    let resolved = resolve_path(path);
    let text = fs::read_to_string(&resolved)
        .map_err(|e| TlssError::Io(format!("{}: {e}", resolved.display())))?;
    let rows = parse_observations(&text)?;
    let name = resolved
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    Ok(DatasetFile {
        path: resolved,
        rows,
        name,
    })
}

/// Parses CSV text into observations, preserving order.
pub fn parse_observations(text: &str) -> Result<Vec<Observation>> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .flexible(true)
        .from_reader(text.as_bytes());
    let headers = reader
        .headers()
        .map_err(|e| TlssError::DataLine {
            line: 1,
            message: e.to_string(),
        })?
        .clone();
    let names: Vec<String> = headers.iter().map(|h| h.to_ascii_lowercase()).collect();
    let with_flag = match names
        .iter()
        .map(String::as_str)
        .collect::<Vec<_>>()
        .as_slice()
    {
        ["value"] => false,
        ["value", "censored"] => true,
        _ => {
            return Err(TlssError::DataLine {
                line: 1,
                message: format!(
                    "expected header `value` or `value,censored`, got `{}`",
                    names.join(",")
                ),
            })
        }
    };

    let mut rows = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| TlssError::DataLine {
            line: e.position().map_or(0, |p| p.line() as usize),
            message: e.to_string(),
        })?;
        let line = record.position().map_or(0, |p| p.line() as usize);
        if record.iter().all(|f| f.is_empty()) {
            continue;
        }
        let expected = if with_flag { 2 } else { 1 };
        if record.len() != expected {
            return Err(TlssError::DataLine {
                line,
                message: format!("expected {expected} field(s), got {}", record.len()),
            });
        }
        let raw = &record[0];
        let value: f64 = raw.parse().map_err(|_| TlssError::DataLine {
            line,
            message: format!("value `{raw}` is not a number"),
        })?;
        if !value.is_finite() {
            return Err(TlssError::DataLine {
                line,
                message: format!("value `{raw}` is not finite"),
            });
        }
        let censored = if with_flag {
            match &record[1] {
                "0" => false,
                "1" => true,
                other => {
                    return Err(TlssError::DataLine {
                        line,
                        message: format!("censored flag must be 0 or 1, got `{other}`"),
                    })
                }
            }
        } else {
            false
        };
        rows.push(Observation { value, censored });
    }
    if rows.is_empty() {
        return Err(TlssError::Data("dataset has no rows".into()));
    }
    Ok(rows)
}

/// Shortest decimal that parses back to the same double (at most 17
/// significant digits). Non-finite values print as `NaN`, `inf`, `-inf`.
pub fn format_number(v: f64) -> String {
    format!("{v:?}")
}

/// Observations as `value,censored` CSV.
pub fn write_observations(rows: &[Observation]) -> String {
    let mut out = String::from("value,censored\n");
    for o in rows {
        out.push_str(&format_number(o.value));
        out.push_str(if o.censored { ",1\n" } else { ",0\n" });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn value_only() {
        let rows = parse_observations("value\n1.0\n2.0").unwrap();
        assert_eq!(rows, vec![Observation::exact(1.0), Observation::exact(2.0)]);
    }

    #[test]
    fn censored_column() {
        let rows = parse_observations("value,censored\n0.009,1\n").unwrap();
        assert_eq!(rows, vec![Observation::left_censored(0.009)]);
    }

    #[test]
    fn bad_rows_name_their_line() {
        let e = parse_observations("value,censored\nabc,0\n").unwrap_err();
        assert!(matches!(e, TlssError::DataLine { line: 2, .. }), "{e:?}");
        let e = parse_observations("value,censored\n1,0\n2,3\n").unwrap_err();
        assert!(matches!(e, TlssError::DataLine { line: 3, .. }), "{e:?}");
        let e = parse_observations("value,censored\n1\n").unwrap_err();
        assert!(matches!(e, TlssError::DataLine { line: 2, .. }), "{e:?}");
        let e = parse_observations("x,y\n1,0\n").unwrap_err();
        assert!(matches!(e, TlssError::DataLine { line: 1, .. }));
        assert!(parse_observations("value\n").is_err());
        assert!(parse_observations("value\ninf\n").is_err());
    }

    #[test]
    fn duplicates_and_order_kept() {
        let rows = parse_observations("value,censored\n3,0\n1,1\n3,0\n").unwrap();
        let v: Vec<f64> = rows.iter().map(|o| o.value).collect();
        assert_eq!(v, vec![3.0, 1.0, 3.0]);
    }

    #[test]
    fn write_parse_round_trip() {
        let rows = vec![
            Observation::exact(0.1 + 0.2),
            Observation::left_censored(1e-300),
            Observation::exact(-123456.789_012_345_67),
        ];
        assert_eq!(
            parse_observations(&write_observations(&rows)).unwrap(),
            rows
        );
    }

    #[test]
    fn file_and_missing_file() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("mercury.csv");
        fs::write(&p, "value\n1.5\n").unwrap();
        let ds = parse_dataset(&p).unwrap();
        assert_eq!(ds.name, "mercury");
        assert_eq!(ds.rows.len(), 1);
        assert!(matches!(
            parse_dataset(&dir.path().join("none.csv")),
            Err(TlssError::Io(_))
        ));
    }
}
