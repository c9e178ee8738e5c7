use serde::{Deserialize, Serialize};

use super::{OrderClass, StatError};
use crate::engine::{ActionTotals, StepRecord};

#[derive(Debug, Default, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderClassCounts {
    pub big: u64,
    pub medium: u64,
    pub small: u64,
}

impl OrderClassCounts {
    pub fn total(&self) -> u64 {
        self.big + self.medium + self.small
    }
}

/// Counts submitted quantities by size class.
pub fn classify_orders(quantities: &[i64]) -> Result<OrderClassCounts, StatError> {
    let mut counts = OrderClassCounts::default();
    for &q in quantities {
        if q < 0 {
            return Err(StatError::Invalid(format!("negative order quantity {q}")));
        }
        match OrderClass::of(q) {
            OrderClass::Big => counts.big += 1,
            OrderClass::Medium => counts.medium += 1,
            OrderClass::Small => counts.small += 1,
        }
    }
    Ok(counts)
}

/// Fractions of the four executed actions over all player-steps.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ActionRatios {
    pub active_hold: f64,
    pub passive_hold: f64,
    pub buy: f64,
    pub sell: f64,
}

impl ActionRatios {
    pub fn from_totals(totals: &ActionTotals) -> Result<Self, StatError> {
        let n = totals.total();
        if n == 0 {
            return Err(StatError::TooFew { needed: 1, got: 0 });
        }
        let n = n as f64;
        Ok(ActionRatios {
            active_hold: totals.active_hold as f64 / n,
            passive_hold: totals.passive_hold as f64 / n,
            buy: totals.buy as f64 / n,
            sell: totals.sell as f64 / n,
        })
    }
}

pub fn action_ratios(steps: &[StepRecord]) -> Result<ActionRatios, StatError> {
    let mut totals = ActionTotals::default();
    for s in steps {
        totals.add_step(s);
    }
    ActionRatios::from_totals(&totals)
}
