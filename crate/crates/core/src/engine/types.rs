use rand::Rng;
use serde::{Deserialize, Serialize};

use super::EngineError;

/// A trading action. Buy and Sell are each other's negation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Action {
    Buy,
    Sell,
    Hold,
}

impl Action {
    #[inline]
    pub fn sign(self) -> i64 {
        match self {
            Action::Buy => 1,
            Action::Sell => -1,
            Action::Hold => 0,
        }
    }

    #[inline]
    pub fn opposite(self) -> Action {
        match self {
            Action::Buy => Action::Sell,
            Action::Sell => Action::Buy,
            Action::Hold => Action::Hold,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum HoldKind {
    None,
    /// The strategy recommended Hold.
    Active,
    /// The strategy repeated the opening direction of a held position.
    Passive,
}

/// The open half of a round trip.
///
/// Virtual positions carry quantity 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Position {
    pub direction: Action,
    pub open_time: u64,
    pub quantity: i64,
    pub open_cognitive_price: i64,
}

/// Outcome of closing a position.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Settlement {
    pub strategy_gain: i64,
    pub wealth_delta: i64,
}

/// Closes `position` at cognitive price `cognitive_price_now`.
///
/// The strategy gain is `direction * (P(t) - P(t0))` and the wealth delta is
/// that gain times the opening quantity.
pub fn settle_round_trip(position: &Position, cognitive_price_now: i64) -> Result<Settlement, EngineError> {
    let strategy_gain = position.direction.sign() * (cognitive_price_now - position.open_cognitive_price);
    let wealth_delta = strategy_gain
        .checked_mul(position.quantity)
        .ok_or(EngineError::Overflow("wealth delta"))?;
    Ok(Settlement { strategy_gain, wealth_delta })
}

/// Initial wealth `floor(B + u)` for a uniform draw `u` in `[0, 100)`.
#[inline]
pub fn initial_wealth_from_uniform(board_lot: i64, u: f64) -> i64 {
    debug_assert!((0.0..100.0).contains(&u));
    (board_lot as f64 + u).floor() as i64
}

/// Draws an initial wealth in `[B, B + 99]`.
pub fn initial_wealth<R: Rng + ?Sized>(board_lot: i64, rng: &mut R) -> i64 {
    let u: f64 = rng.random_range(0.0..100.0);
    initial_wealth_from_uniform(board_lot, u)
}

/// Number of lots a player can order: `floor(w / B)`, zero below one lot.
#[inline]
pub fn order_quantity(wealth: i64, board_lot: i64) -> i64 {
    if wealth <= 0 {
        0
    } else {
        wealth / board_lot
    }
}

/// One quinary history digit in `-2..=2`.
pub type Digit = i8;

/// Quantizes a price change against the cognitive threshold `C`.
///
/// `Δp > C` maps to 2, `0 < Δp <= C` to 1, zero to 0 and the mirror images to
/// -1 and -2.
pub fn quantize_price_change(delta_p: f64, cognitive_threshold: f64) -> Result<Digit, EngineError> {
    if !delta_p.is_finite() {
        return Err(EngineError::NonFinite { what: "price change", value: delta_p });
    }
    let c = cognitive_threshold;
    Ok(if delta_p > c {
        2
    } else if delta_p > 0.0 {
        1
    } else if delta_p == 0.0 {
        0
    } else if delta_p >= -c {
        -1
    } else {
        -2
    })
}

/// Order-size class of a submitted quantity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OrderClass {
    /// `q > 100`
    Big,
    /// `50 < q <= 100`
    Medium,
    /// `q <= 50`
    Small,
}

impl OrderClass {
    #[inline]
    pub fn of(quantity: i64) -> OrderClass {
        if quantity > 100 {
            OrderClass::Big
        } else if quantity > 50 {
            OrderClass::Medium
        } else {
            OrderClass::Small
        }
    }
}

/// One completed real round trip.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TradeRecord {
    pub player_id: usize,
    pub direction: Action,
    pub open_time: u64,
    pub close_time: u64,
    pub quantity: i64,
    pub strategy_gain: i64,
    pub wealth_delta: i64,
    pub caused_bankruptcy: bool,
}

impl TradeRecord {
    /// Zero for a malformed record whose close precedes its open.
    pub fn horizon(&self) -> u64 {
        self.close_time.saturating_sub(self.open_time)
    }
}

/// Why a strategy gain was credited.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GainKind {
    /// Close of the real position by the active strategy.
    Real,
    /// Close of a background round trip.
    Virtual,
    /// Background round trip settled early because its strategy is about to
    /// become the active one.
    Aborted,
}

/// A credit to one accumulated strategy gain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GainRecord {
    pub t: u64,
    pub player_id: usize,
    pub strategy: usize,
    pub kind: GainKind,
    pub direction: Action,
    pub open_time: u64,
    pub gain: i64,
}

/// Everything that happened in one tick.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StepRecord {
    pub t: u64,
    pub delta_p: f64,
    pub price: f64,
    pub h: Digit,
    pub cognitive_price: i64,
    pub active_hold: u32,
    pub passive_hold: u32,
    pub buy: u32,
    pub sell: u32,
    pub big: u32,
    pub medium: u32,
    pub small: u32,
    pub n_replacements: u32,
    /// Sum of all players' wealth after settlement and replacement.
    pub total_wealth: i64,
}

impl StepRecord {
    pub fn n_orders(&self) -> u32 {
        self.buy + self.sell
    }
}
