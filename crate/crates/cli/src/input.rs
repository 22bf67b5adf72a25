//! Vector-set file formats.
//!
//! * CSV: one vector per row, comma separated, `#` lines are comments/headers,
//!   blank lines are ignored.
//! * JSON: an object with a `vectors` field holding equal-length lists of
//!   numbers. Numbers may also be given as decimal strings, which is how
//!   reports serialize them.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use linoep_core::{DenseVector, VectorSet};
use serde::Deserialize;

/// Caps applied to every file read by the CLI.
pub const MAX_VECTORS: usize = 64;
pub const MAX_DIMENSION: usize = 65536;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    /// `.json` selects JSON; everything else is read as CSV.
    pub fn from_path(path: &Path) -> Format {
        match path.extension().and_then(|e| e.to_str()) {
            Some(ext) if ext.eq_ignore_ascii_case("json") => Format::Json,
            _ => Format::Csv,
        }
    }
}

/// Where in the file a problem was found. Both fields are 1-based; `column`
/// counts CSV fields or JSON characters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Location {
    pub line: u64,
    pub column: u64,
}

impl fmt::Display for Location {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum InputError {
    #[error("{location}: {message}")]
    Parse { location: Location, message: String },
    #[error("no vectors in input")]
    Empty,
    #[error("{location}: vector has {found} entries, expected {expected}")]
    Ragged {
        location: Location,
        expected: usize,
        found: usize,
    },
    #[error("{count} vectors exceed the limit of {MAX_VECTORS}")]
    TooManyVectors { count: usize },
    #[error("dimension {dim} exceeds the limit of {MAX_DIMENSION}")]
    DimensionTooLarge { dim: usize },
}

fn parse_scalar(text: &str, location: Location) -> Result<f64, InputError> {
    let value = f64::from_str(text.trim()).map_err(|_| InputError::Parse {
        location,
        message: format!("`{}` is not a number", text.trim()),
    })?;
    if !value.is_finite() {
        return Err(InputError::Parse {
            location,
            message: format!("`{}` is not finite", text.trim()),
        });
    }
    Ok(value)
}

fn finish(rows: Vec<(Location, Vec<f64>)>) -> Result<VectorSet, InputError> {
    let Some((_, first)) = rows.first() else {
        return Err(InputError::Empty);
    };
    let expected = first.len();
    if rows.len() > MAX_VECTORS {
        return Err(InputError::TooManyVectors { count: rows.len() });
    }
    if expected > MAX_DIMENSION {
        return Err(InputError::DimensionTooLarge { dim: expected });
    }
    let mut vectors = Vec::with_capacity(rows.len());
    for (location, row) in rows {
        if row.len() != expected {
            return Err(InputError::Ragged {
                location,
                expected,
                found: row.len(),
            });
        }
        if row.is_empty() {
            return Err(InputError::Parse {
                location,
                message: "empty vector".into(),
            });
        }
        vectors.push(DenseVector::new(row).expect("entries checked finite"));
    }
    Ok(VectorSet::new(vectors).expect("shape checked"))
}

pub fn parse_csv(text: &str) -> Result<VectorSet, InputError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let mut rows = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line());
            InputError::Parse {
                location: Location { line, column: 1 },
                message: e.to_string(),
            }
        })?;
        let line = record.position().map_or(0, |p| p.line());
        if record.iter().all(str::is_empty) {
            continue;
        }
        let row = record
            .iter()
            .enumerate()
            .map(|(i, field)| {
                parse_scalar(
                    field,
                    Location {
                        line,
                        column: i as u64 + 1,
                    },
                )
            })
            .collect::<Result<Vec<_>, _>>()?;
        rows.push((Location { line, column: 1 }, row));
    }
    finish(rows)
}

#[derive(Deserialize)]
#[serde(untagged)]
enum Scalar {
    Number(f64),
    Text(String),
}

#[derive(Deserialize)]
struct VectorFile {
    vectors: Vec<Vec<Scalar>>,
}

pub fn parse_json(text: &str) -> Result<VectorSet, InputError> {
    let file: VectorFile = serde_json::from_str(text).map_err(|e| InputError::Parse {
        location: Location {
            line: e.line() as u64,
            column: e.column() as u64,
        },
        message: e.to_string(),
    })?;
    // JSON positions are lost after deserialization; report the vector index
    // as the line and the entry index as the column.
    let rows = file
        .vectors
        .into_iter()
        .enumerate()
        .map(|(i, row)| {
            let row_loc = Location {
                line: i as u64 + 1,
                column: 1,
            };
            let values = row
                .into_iter()
                .enumerate()
                .map(|(j, s)| {
                    let location = Location {
                        line: i as u64 + 1,
                        column: j as u64 + 1,
                    };
                    match s {
                        Scalar::Number(x) => Ok(x),
                        Scalar::Text(t) => parse_scalar(&t, location),
                    }
                })
                .collect::<Result<Vec<_>, _>>()?;
            Ok((row_loc, values))
        })
        .collect::<Result<Vec<_>, InputError>>()?;
    finish(rows)
}

pub fn parse(text: &str, format: Format) -> Result<VectorSet, InputError> {
    match format {
        Format::Csv => parse_csv(text),
        Format::Json => parse_json(text),
    }
}
