//! Files: CSV logs and tables, sample ingestion, JSON/TOML documents and
//! manifests.

mod csv_log;
mod manifest;
mod samples;

pub use csv_log::CsvRecorder;
pub use manifest::{Manifest, ManifestKind, MANIFEST_FILE};
pub use samples::{parse_samples, read_samples, Column, SampleError};

use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}: {source}")]
    Csv { path: PathBuf, source: csv::Error },
    #[error("{path}: invalid JSON: {source}")]
    Json { path: PathBuf, source: serde_json::Error },
    #[error("{path}: invalid TOML: {source}")]
    Toml { path: PathBuf, source: toml::de::Error },
    #[error("{0}: no manifest.json found")]
    MissingManifest(PathBuf),
    #[error(transparent)]
    Samples(#[from] SampleError),
}

impl IoError {
    pub(crate) fn io(path: &Path, source: std::io::Error) -> IoError {
        IoError::Io { path: path.to_owned(), source }
    }

    pub(crate) fn csv(path: &Path, source: csv::Error) -> IoError {
        IoError::Csv { path: path.to_owned(), source }
    }
}

/// Text formats accepted for configs and sweep specs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DocFormat {
    Json,
    Toml,
}

impl DocFormat {
    /// `.toml` means TOML; anything else is read as JSON.
    pub fn from_path(path: &Path) -> DocFormat {
        match path.extension().and_then(|e| e.to_str()) {
            Some(ext) if ext.eq_ignore_ascii_case("toml") => DocFormat::Toml,
            _ => DocFormat::Json,
        }
    }
}

/// Error from [`parse_document`], before a path is attached.
#[derive(Debug, Error)]
pub enum DocError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid TOML: {0}")]
    Toml(#[from] toml::de::Error),
}

pub fn parse_document<T: DeserializeOwned>(text: &str, format: DocFormat) -> Result<T, DocError> {
    Ok(match format {
        DocFormat::Json => serde_json::from_str(text)?,
        DocFormat::Toml => toml::from_str(text)?,
    })
}

/// Reads a JSON or TOML document, choosing the format by extension.
pub fn read_document<T: DeserializeOwned>(path: &Path) -> Result<T, IoError> {
    let text = std::fs::read_to_string(path).map_err(|e| IoError::io(path, e))?;
    parse_document(&text, DocFormat::from_path(path)).map_err(|e| match e {
        DocError::Json(source) => IoError::Json { path: path.to_owned(), source },
        DocError::Toml(source) => IoError::Toml { path: path.to_owned(), source },
    })
}

pub fn write_json<T: Serialize + ?Sized>(path: &Path, value: &T) -> Result<(), IoError> {
    let mut text = serde_json::to_string_pretty(value).map_err(|e| IoError::Json { path: path.to_owned(), source: e })?;
    text.push('\n');
    std::fs::write(path, text).map_err(|e| IoError::io(path, e))
}

/// Writes rows as CSV with a header taken from the field names.
pub fn write_table<T: Serialize>(path: &Path, rows: impl IntoIterator<Item = T>) -> Result<(), IoError> {
    let file = File::create(path).map_err(|e| IoError::io(path, e))?;
    write_table_to(BufWriter::new(file), rows).map_err(|e| IoError::csv(path, e))
}

pub fn write_table_to<W: Write, T: Serialize>(writer: W, rows: impl IntoIterator<Item = T>) -> Result<(), csv::Error> {
    let mut w = csv::Writer::from_writer(writer);
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_table<T: DeserializeOwned>(path: &Path) -> Result<Vec<T>, IoError> {
    let file = File::open(path).map_err(|e| IoError::io(path, e))?;
    read_table_from(BufReader::new(file)).map_err(|e| IoError::csv(path, e))
}

pub fn read_table_from<R: Read, T: DeserializeOwned>(reader: R) -> Result<Vec<T>, csv::Error> {
    csv::Reader::from_reader(reader).into_deserialize().collect()
}

/// Visits the rows of a CSV table one at a time.
pub fn for_each_row<T: DeserializeOwned>(path: &Path, mut f: impl FnMut(T)) -> Result<(), IoError> {
    let file = File::open(path).map_err(|e| IoError::io(path, e))?;
    let mut r = csv::Reader::from_reader(BufReader::new(file));
    for row in r.deserialize() {
        f(row.map_err(|e| IoError::csv(path, e))?);
    }
    Ok(())
}

/// One row of a final-wealth table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, serde::Deserialize)]
pub struct WealthRow {
    pub player_id: usize,
    pub wealth: i64,
}

pub fn write_wealths(path: &Path, wealths: &[i64]) -> Result<(), IoError> {
    write_table(path, wealths.iter().enumerate().map(|(player_id, &wealth)| WealthRow { player_id, wealth }))
}

pub fn read_wealths(path: &Path) -> Result<Vec<i64>, IoError> {
    Ok(read_table::<WealthRow>(path)?.into_iter().map(|r| r.wealth).collect())
}
