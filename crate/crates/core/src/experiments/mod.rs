//! Multi-trial runs and parameter sweeps.
//!
//! Trials and cells are independent jobs run on the rayon pool. Each job's
//! seed depends only on its trial index, and results are merged in job
//! order, so outputs do not depend on the number of threads.

mod persist;
pub mod presets;
mod spec;
mod sweep;
mod trials;

pub use persist::{
    aggregates_from_trials, write_sweep, AcfRow, CellRow, HorizonRow, WealthSnapshotRow, ACF_FILE, CELLS_FILE,
    HORIZONS_FILE, TRIALS_FILE, WEALTHS_FILE,
};
pub use spec::{Axis, Param, SweepSpec};
pub use sweep::{
    ablation_suite, gini_table, gini_vs_b, kurtosis_table, kurtosis_vs_c, kurtosis_vs_s, phase_diagram,
    phase_table, run_sweep, AblationArm, CellAggregate, FigureTable, GiniRow, KurtosisRow, PhaseRow, SweepCell,
    SweepResult, TrialRow, EXTREME_SIGMA,
};
pub use trials::{run_trial, run_trials, trial_seed, TrialOptions, TrialRecord, TrialSet, TrialStats};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ExperimentError {
    #[error("invalid sweep: {0}")]
    InvalidSpec(String),
    #[error("bad value {value} for {param}: {reason}")]
    BadAxisValue { param: Param, value: f64, reason: String },
    #[error("this table needs axes {expected}, the sweep has {got}")]
    WrongAxes { expected: String, got: String },
}
