use serde::{Deserialize, Serialize};

use super::spec::{Param, SweepSpec};
use super::trials::{mean_acf, run_jobs, TrialOptions, TrialRecord};
use super::ExperimentError;
use crate::engine::{GameConfig, Mode};

/// σ above which a cell counts as an extreme state.
pub const EXTREME_SIGMA: f64 = 10.0;

/// Scalar results of one trial, as persisted in `trials.csv`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialRow {
    pub cell: usize,
    pub trial: usize,
    pub seed: u64,
    pub ok: bool,
    pub error: String,
    pub sigma: Option<f64>,
    pub kurtosis: Option<f64>,
    pub gini: Option<f64>,
    pub mean_total_wealth: Option<f64>,
    pub final_total_wealth: Option<i64>,
    pub final_price: Option<f64>,
    pub active_hold: u64,
    pub passive_hold: u64,
    pub buy: u64,
    pub sell: u64,
    pub n_trades: u64,
    pub n_replacements: u64,
    pub n_masked_returns: usize,
}

impl TrialRow {
    pub fn from_record(cell: usize, r: &TrialRecord) -> TrialRow {
        let mut row = TrialRow {
            cell,
            trial: r.index,
            seed: r.seed,
            ok: false,
            error: String::new(),
            sigma: None,
            kurtosis: None,
            gini: None,
            mean_total_wealth: None,
            final_total_wealth: None,
            final_price: None,
            active_hold: 0,
            passive_hold: 0,
            buy: 0,
            sell: 0,
            n_trades: 0,
            n_replacements: 0,
            n_masked_returns: 0,
        };
        match &r.outcome {
            Err(e) => row.error = e.clone(),
            Ok(s) => {
                row.ok = true;
                row.sigma = s.sigma;
                row.kurtosis = s.kurtosis;
                row.gini = s.gini;
                row.mean_total_wealth = Some(s.mean_total_wealth);
                row.final_total_wealth = Some(s.final_total_wealth);
                row.final_price = Some(s.final_price);
                row.active_hold = s.actions.active_hold;
                row.passive_hold = s.actions.passive_hold;
                row.buy = s.actions.buy;
                row.sell = s.actions.sell;
                row.n_trades = s.n_trades;
                row.n_replacements = s.n_replacements;
                row.n_masked_returns = s.n_masked_returns;
            }
        }
        row
    }
}

/// Trial-averaged statistics of one cell. Failed trials are counted and
/// left out; a statistic undefined in some trials is averaged over the rest.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CellAggregate {
    pub n_ok: usize,
    pub n_failed: usize,
    pub mean_sigma: Option<f64>,
    pub log10_mean_sigma: Option<f64>,
    /// Mean σ above [`EXTREME_SIGMA`].
    pub extreme: Option<bool>,
    pub mean_kurtosis: Option<f64>,
    pub mean_gini: Option<f64>,
    pub mean_total_wealth: Option<f64>,
    /// Action fractions over all player-steps of the successful trials.
    pub active_hold_ratio: Option<f64>,
    pub passive_hold_ratio: Option<f64>,
    pub buy_ratio: Option<f64>,
    pub sell_ratio: Option<f64>,
}

fn mean_of(values: impl Iterator<Item = Option<f64>>) -> Option<f64> {
    let (n, sum) = values.flatten().fold((0usize, 0.0), |(n, s), v| (n + 1, s + v));
    (n > 0).then(|| sum / n as f64)
}

impl CellAggregate {
    pub fn from_rows<'a>(rows: impl IntoIterator<Item = &'a TrialRow>) -> CellAggregate {
        let rows: Vec<&TrialRow> = rows.into_iter().collect();
        let ok: Vec<&TrialRow> = rows.iter().copied().filter(|r| r.ok).collect();
        let mean_sigma = mean_of(ok.iter().map(|r| r.sigma));
        let totals = ok.iter().fold([0u64; 4], |acc, r| {
            [acc[0] + r.active_hold, acc[1] + r.passive_hold, acc[2] + r.buy, acc[3] + r.sell]
        });
        let all: u64 = totals.iter().sum();
        let ratio = |k: usize| (all > 0).then(|| totals[k] as f64 / all as f64);
        CellAggregate {
            n_ok: ok.len(),
            n_failed: rows.len() - ok.len(),
            mean_sigma,
            log10_mean_sigma: mean_sigma.filter(|s| *s > 0.0).map(f64::log10),
            extreme: mean_sigma.map(|s| s > EXTREME_SIGMA),
            mean_kurtosis: mean_of(ok.iter().map(|r| r.kurtosis)),
            mean_gini: mean_of(ok.iter().map(|r| r.gini)),
            mean_total_wealth: mean_of(ok.iter().map(|r| r.mean_total_wealth)),
            active_hold_ratio: ratio(0),
            passive_hold_ratio: ratio(1),
            buy_ratio: ratio(2),
            sell_ratio: ratio(3),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepCell {
    /// One value per axis, in axis order.
    pub values: Vec<f64>,
    pub config: GameConfig,
    pub trials: Vec<TrialRecord>,
    pub aggregate: CellAggregate,
}

impl SweepCell {
    pub fn rows(&self, cell: usize) -> Vec<TrialRow> {
        self.trials.iter().map(|t| TrialRow::from_record(cell, t)).collect()
    }

    pub fn mean_acf(&self) -> Option<Vec<f64>> {
        mean_acf(self.trials.iter().filter_map(TrialRecord::stats))
    }

    pub fn pooled_wealths(&self) -> Vec<i64> {
        self.trials
            .iter()
            .filter_map(TrialRecord::stats)
            .filter_map(|s| s.final_wealths.as_deref())
            .flatten()
            .copied()
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub spec: SweepSpec,
    pub options: TrialOptions,
    pub cells: Vec<SweepCell>,
}

impl SweepResult {
    /// Cell whose axis values equal `values`.
    pub fn cell(&self, values: &[f64]) -> Option<&SweepCell> {
        self.cells.iter().find(|c| c.values == values)
    }
}

/// Runs every cell of the spec. Trial `k` of every cell uses the seed
/// `mix_seed(base_seed, k)`, so cells differ only in their parameters.
pub fn run_sweep(spec: &SweepSpec, opts: &TrialOptions) -> Result<SweepResult, ExperimentError> {
    spec.validate()?;
    let cells = spec.cells()?;
    let jobs: Vec<(GameConfig, usize)> = cells
        .iter()
        .flat_map(|(_, cfg)| (0..spec.n_trials).map(move |k| (cfg.clone(), k)))
        .collect();
    let mut records = run_jobs(&jobs, spec.base_seed, opts).into_iter();
    let cells = cells
        .into_iter()
        .enumerate()
        .map(|(i, (values, config))| {
            let trials: Vec<TrialRecord> = records.by_ref().take(spec.n_trials).collect();
            let rows: Vec<TrialRow> = trials.iter().map(|t| TrialRow::from_record(i, t)).collect();
            SweepCell { values, config, aggregate: CellAggregate::from_rows(&rows), trials }
        })
        .collect();
    Ok(SweepResult { spec: spec.clone(), options: opts.clone(), cells })
}

fn require_axes(spec: &SweepSpec, want: &[Param]) -> Result<(), ExperimentError> {
    let mut got: Vec<Param> = spec.axes.iter().map(|a| a.param).collect();
    let mut want = want.to_vec();
    got.sort();
    want.sort();
    if got != want {
        let names = |ps: &[Param]| ps.iter().map(|p| p.symbol()).collect::<Vec<_>>().join(" x ");
        return Err(ExperimentError::WrongAxes { expected: names(&want), got: names(&got) });
    }
    Ok(())
}

/// A table reproducing one figure, chosen by the sweep's axes.
#[derive(Debug, Clone, PartialEq)]
pub enum FigureTable {
    Phase(Vec<PhaseRow>),
    Gini(Vec<GiniRow>),
    KurtosisS(Vec<KurtosisRow>),
    KurtosisC(Vec<KurtosisRow>),
}

impl FigureTable {
    pub fn file_name(&self) -> &'static str {
        match self {
            FigureTable::Phase(_) => "phase.csv",
            FigureTable::Gini(_) => "gini_vs_b.csv",
            FigureTable::KurtosisS(_) => "kurtosis_vs_s.csv",
            FigureTable::KurtosisC(_) => "kurtosis_vs_c.csv",
        }
    }

    pub fn of(result: &SweepResult) -> Option<FigureTable> {
        let params: Vec<Param> = result.spec.axes.iter().map(|a| a.param).collect();
        match params.as_slice() {
            [Param::Memory, Param::BoardLot] | [Param::BoardLot, Param::Memory] => {
                Some(FigureTable::Phase(phase_table(result)))
            }
            [Param::BoardLot] => Some(FigureTable::Gini(gini_table(result))),
            [Param::Strategies] => Some(FigureTable::KurtosisS(kurtosis_table(result))),
            [Param::CognitiveThreshold] => Some(FigureTable::KurtosisC(kurtosis_table(result))),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PhaseRow {
    #[serde(rename = "M")]
    pub memory: u32,
    #[serde(rename = "B")]
    pub board_lot: i64,
    pub mean_sigma: Option<f64>,
    pub log10_mean_sigma: Option<f64>,
    pub extreme: Option<bool>,
    pub n_ok: usize,
    pub n_failed: usize,
}

pub fn phase_table(result: &SweepResult) -> Vec<PhaseRow> {
    result
        .cells
        .iter()
        .map(|c| PhaseRow {
            memory: c.config.memory,
            board_lot: c.config.board_lot,
            mean_sigma: c.aggregate.mean_sigma,
            log10_mean_sigma: c.aggregate.log10_mean_sigma,
            extreme: c.aggregate.extreme,
            n_ok: c.aggregate.n_ok,
            n_failed: c.aggregate.n_failed,
        })
        .collect()
}

/// Trial-averaged σ of Δp over an M x B grid.
pub fn phase_diagram(spec: &SweepSpec, opts: &TrialOptions) -> Result<SweepResult, ExperimentError> {
    require_axes(spec, &[Param::Memory, Param::BoardLot])?;
    run_sweep(spec, opts)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GiniRow {
    #[serde(rename = "B")]
    pub board_lot: i64,
    pub mean_gini: Option<f64>,
    pub n_ok: usize,
    pub n_failed: usize,
}

pub fn gini_table(result: &SweepResult) -> Vec<GiniRow> {
    result
        .cells
        .iter()
        .map(|c| GiniRow {
            board_lot: c.config.board_lot,
            mean_gini: c.aggregate.mean_gini,
            n_ok: c.aggregate.n_ok,
            n_failed: c.aggregate.n_failed,
        })
        .collect()
}

/// Trial-averaged Gini coefficient of the final wealths against B.
pub fn gini_vs_b(spec: &SweepSpec, opts: &TrialOptions) -> Result<SweepResult, ExperimentError> {
    require_axes(spec, &[Param::BoardLot])?;
    run_sweep(spec, opts)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KurtosisRow {
    pub value: f64,
    pub mean_kurtosis: Option<f64>,
    pub mean_total_wealth: Option<f64>,
    pub n_ok: usize,
    pub n_failed: usize,
}

pub fn kurtosis_table(result: &SweepResult) -> Vec<KurtosisRow> {
    result
        .cells
        .iter()
        .map(|c| KurtosisRow {
            value: c.values[0],
            mean_kurtosis: c.aggregate.mean_kurtosis,
            mean_total_wealth: c.aggregate.mean_total_wealth,
            n_ok: c.aggregate.n_ok,
            n_failed: c.aggregate.n_failed,
        })
        .collect()
}

/// Trial-averaged excess kurtosis of Δp and time-averaged total wealth
/// against S.
pub fn kurtosis_vs_s(spec: &SweepSpec, opts: &TrialOptions) -> Result<SweepResult, ExperimentError> {
    require_axes(spec, &[Param::Strategies])?;
    run_sweep(spec, opts)
}

/// As [`kurtosis_vs_s`], against C.
pub fn kurtosis_vs_c(spec: &SweepSpec, opts: &TrialOptions) -> Result<SweepResult, ExperimentError> {
    require_axes(spec, &[Param::CognitiveThreshold])?;
    run_sweep(spec, opts)
}

/// One arm of the ablation suite.
#[derive(Debug, Clone, PartialEq)]
pub struct AblationArm {
    pub mode: Mode,
    pub trials: super::TrialSet,
}

/// Runs the same configuration in the standard, exogenous-history and
/// random-entry modes with the same trial seeds.
pub fn ablation_suite(
    config: &GameConfig,
    n_trials: usize,
    base_seed: u64,
    opts: &TrialOptions,
) -> Result<Vec<AblationArm>, ExperimentError> {
    if n_trials == 0 {
        return Err(ExperimentError::InvalidSpec("n_trials must be at least 1".into()));
    }
    config.validate().map_err(|e| ExperimentError::InvalidSpec(e.to_string()))?;
    let modes = [Mode::Standard, Mode::ExogenousHistory, Mode::RandomEntry];
    let jobs: Vec<(GameConfig, usize)> = modes
        .iter()
        .flat_map(|&mode| (0..n_trials).map(move |k| (GameConfig { mode, ..config.clone() }, k)))
        .collect();
    let mut records = run_jobs(&jobs, base_seed, opts).into_iter();
    Ok(modes
        .into_iter()
        .map(|mode| AblationArm {
            mode,
            trials: super::TrialSet { trials: records.by_ref().take(n_trials).collect() },
        })
        .collect())
}
