use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::ExperimentError;
use crate::engine::GameConfig;

/// A game parameter that a sweep axis can vary.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Param {
    #[serde(alias = "M")]
    Memory,
    #[serde(alias = "B")]
    BoardLot,
    #[serde(alias = "S")]
    Strategies,
    #[serde(alias = "C")]
    CognitiveThreshold,
    #[serde(alias = "N")]
    Players,
    #[serde(alias = "T")]
    Steps,
    #[serde(alias = "p0")]
    InitialPrice,
    RandomEntryProb,
}

impl Param {
    pub const ALL: [Param; 8] = [
        Param::Memory,
        Param::BoardLot,
        Param::Strategies,
        Param::CognitiveThreshold,
        Param::Players,
        Param::Steps,
        Param::InitialPrice,
        Param::RandomEntryProb,
    ];

    /// Short column name used in output tables.
    pub fn symbol(self) -> &'static str {
        match self {
            Param::Memory => "M",
            Param::BoardLot => "B",
            Param::Strategies => "S",
            Param::CognitiveThreshold => "C",
            Param::Players => "N",
            Param::Steps => "T",
            Param::InitialPrice => "p0",
            Param::RandomEntryProb => "p",
        }
    }

    fn is_integer(self) -> bool {
        !matches!(self, Param::CognitiveThreshold | Param::InitialPrice | Param::RandomEntryProb)
    }

    /// Sets this parameter on `config`. Integer parameters must receive a
    /// non-negative integral value. `config` is left untouched if the result
    /// does not validate.
    pub fn apply(self, config: &mut GameConfig, value: f64) -> Result<(), ExperimentError> {
        let bad = |reason: &str| ExperimentError::BadAxisValue { param: self, value, reason: reason.to_owned() };
        if !value.is_finite() {
            return Err(bad("not finite"));
        }
        if self.is_integer() && (value.fract() != 0.0 || value < 0.0 || value > u32::MAX as f64) {
            return Err(bad("must be a non-negative integer"));
        }
        let mut next = config.clone();
        let c = &mut next;
        match self {
            Param::Memory => c.memory = value as u32,
            Param::BoardLot => c.board_lot = value as i64,
            Param::Strategies => c.n_strategies = value as usize,
            Param::CognitiveThreshold => c.cognitive_threshold = value,
            Param::Players => c.n_players = value as usize,
            Param::Steps => c.n_steps = value as u64,
            Param::InitialPrice => c.initial_price = value,
            Param::RandomEntryProb => c.random_entry_prob = value,
        }
        next.validate().map_err(|e| bad(&e.to_string()))?;
        *config = next;
        Ok(())
    }
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

impl FromStr for Param {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Param::ALL
            .into_iter()
            .find(|p| p.symbol().eq_ignore_ascii_case(s) || serde_json::to_value(p).is_ok_and(|v| v == s))
            .ok_or_else(|| format!("unknown parameter `{s}`"))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Axis {
    pub param: Param,
    pub values: Vec<f64>,
}

impl Axis {
    pub fn new(param: Param, values: impl IntoIterator<Item = f64>) -> Axis {
        Axis { param, values: values.into_iter().collect() }
    }
}

fn default_trials() -> usize {
    20
}

fn default_low_memory_price() -> Option<f64> {
    Some(10_000.0)
}

/// A grid of game configurations, each run for `n_trials` seeds.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSpec {
    #[serde(default)]
    pub base: GameConfig,
    pub axes: Vec<Axis>,
    #[serde(default = "default_trials")]
    pub n_trials: usize,
    #[serde(default)]
    pub base_seed: u64,
    /// Initial price for cells with M <= 2, whose extreme price swings can
    /// otherwise drive the price negative. `None` keeps the base value. Not
    /// applied when p0 is itself an axis.
    #[serde(default = "default_low_memory_price")]
    pub low_memory_initial_price: Option<f64>,
}

impl SweepSpec {
    pub fn new(base: GameConfig, axes: Vec<Axis>, n_trials: usize, base_seed: u64) -> SweepSpec {
        SweepSpec { base, axes, n_trials, base_seed, low_memory_initial_price: default_low_memory_price() }
    }

    pub fn validate(&self) -> Result<(), ExperimentError> {
        if self.n_trials == 0 {
            return Err(ExperimentError::InvalidSpec("n_trials must be at least 1".into()));
        }
        if self.axes.is_empty() || self.axes.len() > 2 {
            return Err(ExperimentError::InvalidSpec(format!("need one or two axes, got {}", self.axes.len())));
        }
        if self.axes.len() == 2 && self.axes[0].param == self.axes[1].param {
            return Err(ExperimentError::InvalidSpec(format!("axis {} appears twice", self.axes[0].param)));
        }
        if let Some(a) = self.axes.iter().find(|a| a.values.is_empty()) {
            return Err(ExperimentError::InvalidSpec(format!("axis {} has no values", a.param)));
        }
        self.cells().map(|_| ())
    }

    pub fn has_axis(&self, param: Param) -> bool {
        self.axes.iter().any(|a| a.param == param)
    }

    /// Every cell's parameter values and config, first axis outermost.
    pub fn cells(&self) -> Result<Vec<(Vec<f64>, GameConfig)>, ExperimentError> {
        let mut points: Vec<Vec<f64>> = vec![vec![]];
        for axis in &self.axes {
            points = points
                .into_iter()
                .flat_map(|p| {
                    axis.values.iter().map(move |&v| {
                        let mut q = p.clone();
                        q.push(v);
                        q
                    })
                })
                .collect();
        }
        points
            .into_iter()
            .map(|values| {
                let mut config = self.base.clone();
                for (axis, &v) in self.axes.iter().zip(&values) {
                    axis.param.apply(&mut config, v)?;
                }
                if let Some(p0) = self.low_memory_initial_price {
                    if config.memory <= 2 && !self.has_axis(Param::InitialPrice) {
                        config.initial_price = p0;
                    }
                }
                config.validate().map_err(|e| ExperimentError::InvalidSpec(e.to_string()))?;
                Ok((values, config))
            })
            .collect()
    }
}
