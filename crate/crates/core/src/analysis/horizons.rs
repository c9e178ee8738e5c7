use std::collections::BTreeMap;

use crate::engine::TradeRecord;

use super::inequality::ccdf;

/// Frequency of completed round trips keyed by `(horizon, strategy gain)`.
#[derive(Debug, Default, Clone, PartialEq, Eq)]
pub struct HorizonGainMap {
    pub cells: BTreeMap<(u64, i64), u64>,
}

impl HorizonGainMap {
    pub fn add(&mut self, trade: &TradeRecord) {
        *self.cells.entry((trade.horizon(), trade.strategy_gain)).or_default() += 1;
    }

    pub fn merge(&mut self, other: &HorizonGainMap) {
        for (k, v) in &other.cells {
            *self.cells.entry(*k).or_default() += v;
        }
    }

    pub fn total(&self) -> u64 {
        self.cells.values().sum()
    }

    /// Round-trip counts per horizon.
    pub fn horizon_counts(&self) -> BTreeMap<u64, u64> {
        let mut out = BTreeMap::new();
        for ((h, _), c) in &self.cells {
            *out.entry(*h).or_default() += c;
        }
        out
    }

    /// CCDF of horizons, `(h, fraction of trades with horizon >= h)`.
    pub fn horizon_ccdf(&self) -> Vec<(f64, f64)> {
        let counts = self.horizon_counts();
        let total = self.total() as f64;
        let mut remaining = self.total();
        counts
            .into_iter()
            .map(|(h, c)| {
                let point = (h as f64, remaining as f64 / total);
                remaining -= c;
                point
            })
            .collect()
    }
}

pub fn horizon_gain_map(trades: &[TradeRecord]) -> HorizonGainMap {
    let mut map = HorizonGainMap::default();
    for t in trades {
        map.add(t);
    }
    map
}

/// CCDF of round-trip horizons pooled over the given trades.
pub fn horizon_distribution(trades: &[TradeRecord]) -> Vec<(f64, f64)> {
    let h: Vec<f64> = trades.iter().map(|t| t.horizon() as f64).collect();
    ccdf(&h)
}
