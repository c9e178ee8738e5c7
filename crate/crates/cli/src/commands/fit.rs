use std::path::PathBuf;

use anyhow::Context;
use serde::{Deserialize, Serialize};
use specgame::io::{read_samples, write_json, Column, Manifest, ManifestKind};
use specgame::powerlaw::{fit_summary, FitSummary};

use crate::output::{emit, prepare};
use crate::FitArgs;

pub const FIT_FILE: &str = "fit.json";

/// Contents of `fit.json`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FitReport {
    pub input: String,
    pub column: String,
    pub seed: u64,
    #[serde(flatten)]
    pub fit: FitSummary,
}

pub fn fit(args: &FitArgs) -> anyhow::Result<PathBuf> {
    super::check_bootstrap(args.bootstrap)?;
    let column: Column = args.column.parse().unwrap_or_else(|e| match e {});
    let samples = read_samples(&args.csv, &column)?;
    let fit = fit_summary(&samples, args.bootstrap, args.seed)
        .with_context(|| format!("cannot fit a power law to {}", args.csv.display()))?;
    let report = FitReport { input: args.csv.display().to_string(), column: args.column.clone(), seed: args.seed, fit };

    let stem = args.csv.file_stem().map_or_else(|| "samples".into(), |s| s.to_string_lossy().into_owned());
    let dir = prepare(args.out.as_deref(), || format!("fit-{stem}-{}", args.column))?;
    write_json(&dir.join(FIT_FILE), &report)?;
    let mut manifest = Manifest::new(ManifestKind::Fit);
    manifest.files = vec![FIT_FILE.into()];
    manifest.write(&dir)?;
    emit(&format!("{}\n", serde_json::to_string_pretty(&report)?));
    Ok(dir)
}
