use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::analysis::{self, HorizonGainMap};
use crate::engine::{run_with, ActionTotals, GameConfig, Recorder, StepRecord, TradeRecord};
use crate::rng::mix_seed;

/// What to keep from each trial beyond the scalar statistics.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct TrialOptions {
    /// Largest lag of the volatility autocorrelation; `None` skips it.
    pub acf_max_lag: Option<usize>,
    pub horizons: bool,
    pub keep_wealths: bool,
    /// Keep the price and price-change series.
    pub keep_series: bool,
}

/// Statistics of one completed trial.
#[derive(Debug, Clone, PartialEq)]
pub struct TrialStats {
    /// Standard deviation of Δp.
    pub sigma: Option<f64>,
    /// Excess kurtosis of Δp.
    pub kurtosis: Option<f64>,
    /// Gini coefficient of the final wealths.
    pub gini: Option<f64>,
    /// Total wealth averaged over all steps.
    pub mean_total_wealth: f64,
    pub final_total_wealth: i64,
    pub final_price: f64,
    pub actions: ActionTotals,
    pub n_trades: u64,
    pub n_replacements: u64,
    /// Returns excluded because a price was not positive.
    pub n_masked_returns: usize,
    pub final_wealths: Option<Vec<i64>>,
    pub acf: Option<Vec<f64>>,
    pub horizons: Option<HorizonGainMap>,
    pub delta_p: Option<Vec<f64>>,
    /// Prices including p(0).
    pub prices: Option<Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrialRecord {
    pub index: usize,
    pub seed: u64,
    pub outcome: Result<TrialStats, String>,
}

impl TrialRecord {
    pub fn stats(&self) -> Option<&TrialStats> {
        self.outcome.as_ref().ok()
    }
}

/// Accumulates per-trial statistics without keeping the trade log.
struct StatsRecorder {
    delta_p: Vec<f64>,
    prices: Vec<f64>,
    wealth_sum: f64,
    actions: ActionTotals,
    n_trades: u64,
    n_replacements: u64,
    horizons: Option<HorizonGainMap>,
}

impl Recorder for StatsRecorder {
    fn on_step(&mut self, s: &StepRecord) {
        self.delta_p.push(s.delta_p);
        self.prices.push(s.price);
        self.wealth_sum += s.total_wealth as f64;
        self.actions.add_step(s);
        self.n_replacements += s.n_replacements as u64;
    }

    fn on_trade(&mut self, t: &TradeRecord) {
        self.n_trades += 1;
        if let Some(h) = &mut self.horizons {
            h.add(t);
        }
    }
}

/// Runs one game and reduces it to [`TrialStats`].
pub fn run_trial(config: &GameConfig, opts: &TrialOptions) -> Result<TrialStats, String> {
    let steps = config.n_steps as usize;
    let mut rec = StatsRecorder {
        delta_p: Vec::with_capacity(steps),
        prices: Vec::with_capacity(steps + 1),
        wealth_sum: 0.0,
        actions: ActionTotals::default(),
        n_trades: 0,
        n_replacements: 0,
        horizons: opts.horizons.then(HorizonGainMap::default),
    };
    rec.prices.push(config.initial_price);
    let game = run_with(config, &mut rec).map_err(|e| e.to_string())?;

    let wealths = game.wealths();
    let as_f64: Vec<f64> = wealths.iter().map(|&w| w as f64).collect();
    let returns = analysis::log_returns(&rec.prices).map_err(|e| e.to_string())?;
    let acf = opts
        .acf_max_lag
        .and_then(|lag| analysis::volatility_autocorrelation(&returns, lag).ok())
        .map(|a| a.rho);
    Ok(TrialStats {
        sigma: analysis::sigma(&rec.delta_p).ok(),
        kurtosis: analysis::excess_kurtosis(&rec.delta_p).ok(),
        gini: analysis::gini(&as_f64).ok(),
        mean_total_wealth: rec.wealth_sum / steps as f64,
        final_total_wealth: game.total_wealth(),
        final_price: game.market().price,
        actions: rec.actions,
        n_trades: rec.n_trades,
        n_replacements: rec.n_replacements,
        n_masked_returns: returns.len() - returns.n_valid(),
        final_wealths: opts.keep_wealths.then(|| wealths.to_vec()),
        acf,
        horizons: rec.horizons,
        delta_p: opts.keep_series.then_some(rec.delta_p),
        prices: opts.keep_series.then_some(rec.prices),
    })
}

/// Seed of trial `k`.
pub fn trial_seed(base_seed: u64, k: usize) -> u64 {
    mix_seed(base_seed, k as u64)
}

/// Runs `n_trials` games of `config`, trial `k` with seed
/// `mix_seed(base_seed, k)`. Failed trials are kept with their error.
pub fn run_trials(config: &GameConfig, n_trials: usize, base_seed: u64, opts: &TrialOptions) -> TrialSet {
    let jobs: Vec<(GameConfig, usize)> = (0..n_trials).map(|k| (config.clone(), k)).collect();
    TrialSet { trials: run_jobs(&jobs, base_seed, opts) }
}

/// Runs `(config, trial index)` jobs in parallel and returns them in order.
pub(crate) fn run_jobs(jobs: &[(GameConfig, usize)], base_seed: u64, opts: &TrialOptions) -> Vec<TrialRecord> {
    jobs.par_iter()
        .map(|(config, k)| {
            let seed = trial_seed(base_seed, *k);
            let cfg = GameConfig { seed, ..config.clone() };
            TrialRecord { index: *k, seed, outcome: run_trial(&cfg, opts) }
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrialSet {
    pub trials: Vec<TrialRecord>,
}

impl TrialSet {
    pub fn ok(&self) -> impl Iterator<Item = &TrialStats> {
        self.trials.iter().filter_map(TrialRecord::stats)
    }

    pub fn n_failed(&self) -> usize {
        self.trials.iter().filter(|t| t.outcome.is_err()).count()
    }

    /// Final wealths of every successful trial, concatenated in trial order.
    /// Empty unless the trials kept their wealths.
    pub fn pooled_wealths(&self) -> Vec<i64> {
        self.ok().filter_map(|s| s.final_wealths.as_deref()).flatten().copied().collect()
    }

    /// Lag-by-lag mean of the trials' volatility autocorrelations.
    pub fn mean_acf(&self) -> Option<Vec<f64>> {
        mean_acf(self.ok())
    }

    pub fn merged_horizons(&self) -> HorizonGainMap {
        let mut m = HorizonGainMap::default();
        for h in self.ok().filter_map(|s| s.horizons.as_ref()) {
            m.merge(h);
        }
        m
    }
}

pub(crate) fn mean_acf<'a>(stats: impl Iterator<Item = &'a TrialStats>) -> Option<Vec<f64>> {
    let mut sum: Option<Vec<f64>> = None;
    let mut n = 0usize;
    for acf in stats.filter_map(|s| s.acf.as_ref()) {
        let s = sum.get_or_insert_with(|| vec![0.0; acf.len()]);
        if s.len() != acf.len() {
            continue;
        }
        for (a, b) in s.iter_mut().zip(acf) {
            *a += b;
        }
        n += 1;
    }
    sum.map(|s| s.into_iter().map(|x| x / n as f64).collect())
}
