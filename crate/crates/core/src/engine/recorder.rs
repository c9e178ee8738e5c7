use serde::{Deserialize, Serialize};

use super::types::{GainRecord, StepRecord, TradeRecord};
use super::{Game, GameConfig};

/// Receives records as a game runs. All hooks default to no-ops so a
/// recorder only pays for what it keeps.
pub trait Recorder {
    fn on_step(&mut self, _step: &StepRecord) {}
    fn on_trade(&mut self, _trade: &TradeRecord) {}
    fn on_gain(&mut self, _gain: &GainRecord) {}
}

#[derive(Debug, Default, Clone, Copy)]
pub struct NullRecorder;

impl Recorder for NullRecorder {}

impl<R: Recorder + ?Sized> Recorder for &mut R {
    fn on_step(&mut self, step: &StepRecord) {
        (**self).on_step(step)
    }
    fn on_trade(&mut self, trade: &TradeRecord) {
        (**self).on_trade(trade)
    }
    fn on_gain(&mut self, gain: &GainRecord) {
        (**self).on_gain(gain)
    }
}

impl<A: Recorder, B: Recorder> Recorder for (A, B) {
    fn on_step(&mut self, step: &StepRecord) {
        self.0.on_step(step);
        self.1.on_step(step);
    }
    fn on_trade(&mut self, trade: &TradeRecord) {
        self.0.on_trade(trade);
        self.1.on_trade(trade);
    }
    fn on_gain(&mut self, gain: &GainRecord) {
        self.0.on_gain(gain);
        self.1.on_gain(gain);
    }
}

/// Counts of executed real actions over player-steps.
#[derive(Debug, Default, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ActionTotals {
    pub active_hold: u64,
    pub passive_hold: u64,
    pub buy: u64,
    pub sell: u64,
}

impl ActionTotals {
    pub fn add_step(&mut self, s: &StepRecord) {
        self.active_hold += s.active_hold as u64;
        self.passive_hold += s.passive_hold as u64;
        self.buy += s.buy as u64;
        self.sell += s.sell as u64;
    }

    pub fn merge(&mut self, other: &ActionTotals) {
        self.active_hold += other.active_hold;
        self.passive_hold += other.passive_hold;
        self.buy += other.buy;
        self.sell += other.sell;
    }

    pub fn total(&self) -> u64 {
        self.active_hold + self.passive_hold + self.buy + self.sell
    }
}

/// Keeps the step and trade logs, and optionally every gain credit.
#[derive(Debug, Default, Clone)]
pub struct CollectingRecorder {
    pub steps: Vec<StepRecord>,
    pub trades: Vec<TradeRecord>,
    pub gains: Option<Vec<GainRecord>>,
}

impl CollectingRecorder {
    pub fn with_gains() -> Self {
        CollectingRecorder { gains: Some(Vec::new()), ..Default::default() }
    }

    pub fn finish(self, game: &Game) -> RunOutput {
        let mut action_totals = ActionTotals::default();
        for s in &self.steps {
            action_totals.add_step(s);
        }
        RunOutput {
            config: game.config().clone(),
            steps: self.steps,
            trades: self.trades,
            gains: self.gains,
            final_wealths: game.wealths().to_vec(),
            final_gains: (0..game.n_players()).map(|i| game.gains_of(i).to_vec()).collect(),
            action_totals,
        }
    }
}

impl Recorder for CollectingRecorder {
    fn on_step(&mut self, step: &StepRecord) {
        self.steps.push(*step);
    }
    fn on_trade(&mut self, trade: &TradeRecord) {
        self.trades.push(*trade);
    }
    fn on_gain(&mut self, gain: &GainRecord) {
        if let Some(g) = &mut self.gains {
            g.push(*gain);
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunOutput {
    pub config: GameConfig,
    pub steps: Vec<StepRecord>,
    pub trades: Vec<TradeRecord>,
    pub gains: Option<Vec<GainRecord>>,
    pub final_wealths: Vec<i64>,
    pub final_gains: Vec<Vec<i64>>,
    pub action_totals: ActionTotals,
}

impl RunOutput {
    /// Price series including `p(0)`.
    pub fn prices(&self) -> Vec<f64> {
        std::iter::once(self.config.initial_price)
            .chain(self.steps.iter().map(|s| s.price))
            .collect()
    }

    pub fn delta_p(&self) -> Vec<f64> {
        self.steps.iter().map(|s| s.delta_p).collect()
    }
}
