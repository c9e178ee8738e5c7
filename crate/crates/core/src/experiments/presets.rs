//! Sweep specs for the standard figure tables.

use super::spec::{Axis, Param, SweepSpec};
use crate::engine::GameConfig;

/// Names accepted by [`preset`].
pub const PRESETS: [&str; 4] = ["phase", "gini", "kurtosis-s", "kurtosis-c"];

/// M x B grid of σ over M in 2..=8 and B in 2..=15.
pub fn phase(n_trials: usize, base_seed: u64) -> SweepSpec {
    SweepSpec::new(
        GameConfig::default(),
        vec![
            Axis::new(Param::Memory, (2..=8).map(f64::from)),
            Axis::new(Param::BoardLot, (2..=15).map(f64::from)),
        ],
        n_trials,
        base_seed,
    )
}

/// Gini coefficient against B at M=5.
pub fn gini(n_trials: usize, base_seed: u64) -> SweepSpec {
    SweepSpec::new(
        GameConfig::default(),
        vec![Axis::new(Param::BoardLot, [2.0, 3.0, 5.0, 9.0, 15.0])],
        n_trials,
        base_seed,
    )
}

/// Kurtosis and time-averaged total wealth against S.
pub fn kurtosis_s(n_trials: usize, base_seed: u64) -> SweepSpec {
    SweepSpec::new(
        GameConfig::default(),
        vec![Axis::new(Param::Strategies, [1.0, 2.0, 4.0, 8.0])],
        n_trials,
        base_seed,
    )
}

/// Kurtosis and time-averaged total wealth against C.
pub fn kurtosis_c(n_trials: usize, base_seed: u64) -> SweepSpec {
    SweepSpec::new(
        GameConfig::default(),
        vec![Axis::new(Param::CognitiveThreshold, [1.0, 3.0, 5.0, 9.0])],
        n_trials,
        base_seed,
    )
}

pub fn preset(name: &str, n_trials: usize, base_seed: u64) -> Option<SweepSpec> {
    Some(match name {
        "phase" => phase(n_trials, base_seed),
        "gini" => gini(n_trials, base_seed),
        "kurtosis-s" => kurtosis_s(n_trials, base_seed),
        "kurtosis-c" => kurtosis_c(n_trials, base_seed),
        _ => return None,
    })
}
