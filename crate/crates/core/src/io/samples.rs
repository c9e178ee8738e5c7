use std::io::Read;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use thiserror::Error;

/// Which CSV column holds the samples.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Column {
    Index(usize),
    Name(String),
}

impl Default for Column {
    fn default() -> Self {
        Column::Index(0)
    }
}

impl FromStr for Column {
    type Err = std::convert::Infallible;

    /// A bare integer is a zero-based index; anything else is a header name.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s.parse() {
            Ok(i) => Column::Index(i),
            Err(_) => Column::Name(s.to_owned()),
        })
    }
}

#[derive(Debug, Error)]
pub enum SampleError {
    #[error("cannot read {path}: {source}")]
    Unreadable { path: PathBuf, source: std::io::Error },
    #[error("malformed CSV at line {line}: {message}")]
    Malformed { line: u64, message: String },
    #[error("no column named `{0}` in the header")]
    NoColumn(String),
    #[error("line {line} has no column {column}")]
    MissingField { line: u64, column: usize },
    #[error("line {line}: `{value}` is not a finite number")]
    NonNumeric { line: u64, value: String },
    #[error("no samples found")]
    Empty,
}

pub fn read_samples(path: &Path, column: &Column) -> Result<Vec<f64>, SampleError> {
    let file =
        std::fs::File::open(path).map_err(|e| SampleError::Unreadable { path: path.to_owned(), source: e })?;
    parse_samples(std::io::BufReader::new(file), column)
}

/// Reads one numeric column. A header row is optional when the column is
/// given by index: a first row whose field is not a number is taken as the
/// header. Selecting by name requires the header.
pub fn parse_samples<R: Read>(reader: R, column: &Column) -> Result<Vec<f64>, SampleError> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_reader(reader);
    let mut out = Vec::new();
    let mut index = match column {
        Column::Index(i) => Some(*i),
        Column::Name(_) => None,
    };
    let mut first = true;
    for record in rdr.records() {
        let record = record.map_err(|e| SampleError::Malformed {
            line: e.position().map_or(0, |p| p.line()),
            message: e.to_string(),
        })?;
        let line = record.position().map_or(0, |p| p.line());
        if record.iter().all(str::is_empty) {
            continue;
        }
        let idx = match (index, column) {
            (Some(i), _) => i,
            (None, Column::Name(name)) => {
                let i = record.iter().position(|h| h == name).ok_or_else(|| SampleError::NoColumn(name.clone()))?;
                index = Some(i);
                first = false;
                continue;
            }
            (None, Column::Index(i)) => *i,
        };
        let field = record.get(idx).ok_or(SampleError::MissingField { line, column: idx })?;
        match field.parse::<f64>() {
            Ok(v) if v.is_finite() => out.push(v),
            _ if first => {}
            _ => return Err(SampleError::NonNumeric { line, value: field.to_owned() }),
        }
        first = false;
    }
    if index.is_none() {
        if let Column::Name(name) = column {
            return Err(SampleError::NoColumn(name.clone()));
        }
    }
    if out.is_empty() {
        return Err(SampleError::Empty);
    }
    Ok(out)
}
