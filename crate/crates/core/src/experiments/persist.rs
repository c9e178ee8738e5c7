use std::path::Path;

use serde::{Deserialize, Serialize};

use super::sweep::{CellAggregate, FigureTable, SweepResult, TrialRow};
use crate::engine::Mode;
use crate::io::{write_table, IoError, Manifest, ManifestKind};

pub const CELLS_FILE: &str = "cells.csv";
pub const TRIALS_FILE: &str = "trials.csv";
pub const WEALTHS_FILE: &str = "wealths.csv";
pub const ACF_FILE: &str = "acf.csv";
pub const HORIZONS_FILE: &str = "horizons.csv";

/// One row of `cells.csv`: the cell's full parameter set and aggregates.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CellRow {
    pub cell: usize,
    #[serde(rename = "N")]
    pub n_players: usize,
    #[serde(rename = "S")]
    pub n_strategies: usize,
    #[serde(rename = "M")]
    pub memory: u32,
    #[serde(rename = "B")]
    pub board_lot: i64,
    #[serde(rename = "C")]
    pub cognitive_threshold: f64,
    #[serde(rename = "T")]
    pub n_steps: u64,
    pub p0: f64,
    pub mode: Mode,
    pub random_entry_prob: f64,
    pub n_ok: usize,
    pub n_failed: usize,
    pub mean_sigma: Option<f64>,
    pub log10_mean_sigma: Option<f64>,
    pub extreme: Option<bool>,
    pub mean_kurtosis: Option<f64>,
    pub mean_gini: Option<f64>,
    pub mean_total_wealth: Option<f64>,
    pub active_hold_ratio: Option<f64>,
    pub passive_hold_ratio: Option<f64>,
    pub buy_ratio: Option<f64>,
    pub sell_ratio: Option<f64>,
}

impl CellRow {
    pub fn aggregate(&self) -> CellAggregate {
        CellAggregate {
            n_ok: self.n_ok,
            n_failed: self.n_failed,
            mean_sigma: self.mean_sigma,
            log10_mean_sigma: self.log10_mean_sigma,
            extreme: self.extreme,
            mean_kurtosis: self.mean_kurtosis,
            mean_gini: self.mean_gini,
            mean_total_wealth: self.mean_total_wealth,
            active_hold_ratio: self.active_hold_ratio,
            passive_hold_ratio: self.passive_hold_ratio,
            buy_ratio: self.buy_ratio,
            sell_ratio: self.sell_ratio,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct WealthSnapshotRow {
    pub cell: usize,
    pub trial: usize,
    pub player_id: usize,
    pub wealth: i64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AcfRow {
    pub cell: usize,
    pub lag: usize,
    pub rho: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct HorizonRow {
    pub cell: usize,
    pub horizon: u64,
    pub gain: i64,
    pub count: u64,
}

fn cell_rows(result: &SweepResult) -> Vec<CellRow> {
    result
        .cells
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let a = &c.aggregate;
            let cfg = &c.config;
            CellRow {
                cell: i,
                n_players: cfg.n_players,
                n_strategies: cfg.n_strategies,
                memory: cfg.memory,
                board_lot: cfg.board_lot,
                cognitive_threshold: cfg.cognitive_threshold,
                n_steps: cfg.n_steps,
                p0: cfg.initial_price,
                mode: cfg.mode,
                random_entry_prob: cfg.random_entry_prob,
                n_ok: a.n_ok,
                n_failed: a.n_failed,
                mean_sigma: a.mean_sigma,
                log10_mean_sigma: a.log10_mean_sigma,
                extreme: a.extreme,
                mean_kurtosis: a.mean_kurtosis,
                mean_gini: a.mean_gini,
                mean_total_wealth: a.mean_total_wealth,
                active_hold_ratio: a.active_hold_ratio,
                passive_hold_ratio: a.passive_hold_ratio,
                buy_ratio: a.buy_ratio,
                sell_ratio: a.sell_ratio,
            }
        })
        .collect()
}

/// Writes every table of a sweep plus its manifest into `dir`, which must
/// exist. Returns the manifest.
pub fn write_sweep(dir: &Path, result: &SweepResult) -> Result<Manifest, IoError> {
    let mut files = Vec::new();
    let mut put = |name: &str| {
        files.push(name.to_owned());
        dir.join(name)
    };

    write_table(&put(CELLS_FILE), cell_rows(result))?;
    write_table(&put(TRIALS_FILE), result.cells.iter().enumerate().flat_map(|(i, c)| c.rows(i)))?;
    match FigureTable::of(result) {
        Some(FigureTable::Phase(rows)) => write_table(&put("phase.csv"), rows)?,
        Some(FigureTable::Gini(rows)) => write_table(&put("gini_vs_b.csv"), rows)?,
        Some(FigureTable::KurtosisS(rows)) => write_table(&put("kurtosis_vs_s.csv"), rows)?,
        Some(FigureTable::KurtosisC(rows)) => write_table(&put("kurtosis_vs_c.csv"), rows)?,
        None => {}
    }
    if result.options.keep_wealths {
        let rows = result.cells.iter().enumerate().flat_map(|(cell, c)| {
            c.trials.iter().filter_map(move |t| {
                let w = t.stats()?.final_wealths.as_ref()?;
                Some(w.iter().enumerate().map(move |(player_id, &wealth)| WealthSnapshotRow {
                    cell,
                    trial: t.index,
                    player_id,
                    wealth,
                }))
            })
        });
        write_table(&put(WEALTHS_FILE), rows.flatten())?;
    }
    if result.options.acf_max_lag.is_some() {
        let rows = result.cells.iter().enumerate().flat_map(|(cell, c)| {
            c.mean_acf()
                .unwrap_or_default()
                .into_iter()
                .enumerate()
                .map(move |(k, rho)| AcfRow { cell, lag: k + 1, rho })
        });
        write_table(&put(ACF_FILE), rows)?;
    }
    if result.options.horizons {
        let mut rows = Vec::new();
        for (cell, c) in result.cells.iter().enumerate() {
            let mut merged = crate::analysis::HorizonGainMap::default();
            for h in c.trials.iter().filter_map(|t| t.stats()?.horizons.as_ref()) {
                merged.merge(h);
            }
            rows.extend(merged.cells.iter().map(|(&(horizon, gain), &count)| HorizonRow { cell, horizon, gain, count }));
        }
        write_table(&put(HORIZONS_FILE), rows)?;
    }

    let mut manifest = Manifest::new(ManifestKind::Sweep);
    manifest.sweep = serde_json::to_value(&result.spec).ok();
    manifest.config = Some(result.spec.base.clone());
    manifest.files = files;
    if let Ok(v) = serde_json::to_value(&result.options) {
        manifest.extra.insert("trial_options".into(), v);
    }
    manifest.write(dir)?;
    Ok(manifest)
}

/// Recomputes each cell's aggregate from a persisted `trials.csv`.
pub fn aggregates_from_trials(rows: &[TrialRow]) -> Vec<CellAggregate> {
    let n_cells = rows.iter().map(|r| r.cell + 1).max().unwrap_or(0);
    (0..n_cells).map(|c| CellAggregate::from_rows(rows.iter().filter(|r| r.cell == c))).collect()
}
