use std::path::{Path, PathBuf};

use anyhow::{bail, Context};
use serde::{Deserialize, Serialize};
use specgame::analysis::{
    excess_kurtosis, gini, log_returns, sigma, volatility_autocorrelation, AcfResult, ActionRatios, LogFit,
    OrderClassCounts, ReturnSeries,
};
use specgame::engine::{ActionTotals, StepRecord, TradeRecord};
use specgame::io::{read_table, read_wealths, write_json, Manifest, ManifestKind};
use specgame::powerlaw::{fit_summary, FitSummary};
use specgame::GameConfig;

use super::run::{STEPS_FILE, TRADES_FILE, WEALTH_FILE};
use crate::output::{emit, prepare};
use crate::AnalyzeArgs;

pub const ANALYSIS_FILE: &str = "analysis.json";

/// The logs of one `run` directory.
pub struct RunData {
    pub config: GameConfig,
    pub steps: Vec<StepRecord>,
    pub trades: Vec<TradeRecord>,
    pub wealths: Vec<i64>,
}

impl RunData {
    pub fn load(dir: &Path) -> anyhow::Result<RunData> {
        let manifest = Manifest::read(dir)?;
        if manifest.kind != ManifestKind::Run {
            bail!("{} holds a {:?} manifest, not a run", dir.display(), manifest.kind);
        }
        let Some(config) = manifest.config else { bail!("run manifest in {} has no config", dir.display()) };
        Ok(RunData {
            config,
            steps: read_table(&dir.join(STEPS_FILE))?,
            trades: read_table(&dir.join(TRADES_FILE))?,
            wealths: read_wealths(&dir.join(WEALTH_FILE))?,
        })
    }

    /// Prices including p(0).
    pub fn prices(&self) -> Vec<f64> {
        std::iter::once(self.config.initial_price).chain(self.steps.iter().map(|s| s.price)).collect()
    }
}

/// Scalar statistics of one run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunAnalysis {
    pub n_steps: usize,
    pub n_players: usize,
    pub sigma: Option<f64>,
    pub kurtosis: Option<f64>,
    pub gini: Option<f64>,
    pub final_price: Option<f64>,
    pub final_total_wealth: Option<i64>,
    pub n_trades: usize,
    pub n_replacements: u64,
    pub n_masked_returns: usize,
    pub actions: Option<ActionRatios>,
    pub order_classes: OrderClassCounts,
    pub mean_horizon: Option<f64>,
    pub acf_max_lag: Option<usize>,
    pub acf_fit: Option<LogFit>,
    pub wealth_tail: Option<FitSummary>,
    /// Why the wealth tail could not be fitted.
    pub wealth_tail_error: Option<String>,
}

/// Everything derived from a run, including the series that the report
/// writes out.
pub struct Derived {
    pub analysis: RunAnalysis,
    pub returns: Option<ReturnSeries>,
    pub acf: Option<AcfResult>,
}

pub fn derive(data: &RunData, acf_lag: usize, bootstrap: usize, seed: u64) -> Derived {
    let dp: Vec<f64> = data.steps.iter().map(|s| s.delta_p).collect();
    let mut totals = ActionTotals::default();
    let mut classes = OrderClassCounts::default();
    for s in &data.steps {
        totals.add_step(s);
        classes.big += s.big as u64;
        classes.medium += s.medium as u64;
        classes.small += s.small as u64;
    }
    let returns = log_returns(&data.prices()).ok();
    let acf = returns.as_ref().and_then(|r| {
        let lag = acf_lag.min(r.n_valid().saturating_sub(2));
        if lag == 0 {
            return None;
        }
        let acf = volatility_autocorrelation(r, lag).ok()?;
        Some(acf.clone().with_fit(1, lag).unwrap_or(acf))
    });
    let w: Vec<f64> = data.wealths.iter().map(|&w| w as f64).collect();
    let (wealth_tail, wealth_tail_error) = match fit_summary(&w, bootstrap, seed) {
        Ok(f) => (Some(f), None),
        Err(e) => (None, Some(e.to_string())),
    };
    let horizons: u64 = data.trades.iter().map(TradeRecord::horizon).sum();
    let analysis = RunAnalysis {
        n_steps: data.steps.len(),
        n_players: data.wealths.len(),
        sigma: sigma(&dp).ok(),
        kurtosis: excess_kurtosis(&dp).ok(),
        gini: gini(&w).ok(),
        final_price: data.steps.last().map(|s| s.price),
        final_total_wealth: data.steps.last().map(|s| s.total_wealth),
        n_trades: data.trades.len(),
        n_replacements: data.steps.iter().map(|s| s.n_replacements as u64).sum(),
        n_masked_returns: returns.as_ref().map_or(0, |r| r.len() - r.n_valid()),
        actions: ActionRatios::from_totals(&totals).ok(),
        order_classes: classes,
        mean_horizon: (!data.trades.is_empty()).then(|| horizons as f64 / data.trades.len() as f64),
        acf_max_lag: acf.as_ref().map(|a| a.lags.len()),
        acf_fit: acf.as_ref().and_then(|a| a.fit),
        wealth_tail,
        wealth_tail_error,
    };
    Derived { analysis, returns, acf }
}

pub fn analyze(args: &AnalyzeArgs) -> anyhow::Result<PathBuf> {
    super::check_bootstrap(args.bootstrap)?;
    let data = RunData::load(&args.dir)?;
    let derived = derive(&data, args.acf_lag, args.bootstrap, args.seed);
    let out = args.out.clone().unwrap_or_else(|| args.dir.join("analysis"));
    let dir = prepare(Some(&out), String::new)?;
    write_json(&dir.join(ANALYSIS_FILE), &derived.analysis)?;

    let mut manifest = Manifest::new(ManifestKind::Analyze);
    manifest.config = Some(data.config);
    manifest.files = vec![ANALYSIS_FILE.into()];
    manifest.extra.insert("source".into(), args.dir.display().to_string().into());
    manifest.write(&dir)?;
    emit(&format!("{}\n", serde_json::to_string_pretty(&derived.analysis).context("cannot format analysis")?));
    Ok(dir)
}
