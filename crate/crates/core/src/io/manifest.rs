use std::collections::BTreeMap;
use std::path::Path;
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};

use super::{read_document, write_json, IoError};
use crate::engine::GameConfig;
use crate::rng::{PRNG_NAME, SEED_MIX_NAME};

pub const MANIFEST_FILE: &str = "manifest.json";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ManifestKind {
    Run,
    Sweep,
    Analyze,
    Fit,
    Report,
}

/// Describes the contents of an output directory. `created_unix_secs` is
/// the only time-dependent value written by any command.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub kind: ManifestKind,
    pub code_version: String,
    pub prng: String,
    pub seed_derivation: String,
    pub created_unix_secs: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub config: Option<GameConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sweep: Option<serde_json::Value>,
    #[serde(default)]
    pub files: Vec<String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub extra: BTreeMap<String, serde_json::Value>,
}

impl Manifest {
    pub fn new(kind: ManifestKind) -> Manifest {
        Manifest {
            kind,
            code_version: env!("CARGO_PKG_VERSION").to_owned(),
            prng: PRNG_NAME.to_owned(),
            seed_derivation: SEED_MIX_NAME.to_owned(),
            created_unix_secs: SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs()),
            config: None,
            sweep: None,
            files: Vec::new(),
            extra: BTreeMap::new(),
        }
    }

    pub fn write(&self, dir: &Path) -> Result<(), IoError> {
        write_json(&dir.join(MANIFEST_FILE), self)
    }

    pub fn read(dir: &Path) -> Result<Manifest, IoError> {
        let path = dir.join(MANIFEST_FILE);
        if !path.is_file() {
            return Err(IoError::MissingManifest(dir.to_owned()));
        }
        read_document(&path)
    }
}
