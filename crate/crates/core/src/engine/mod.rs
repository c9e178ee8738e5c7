//! The Speculation Game state machine.
//!
//! A tick first resolves every real action against the history pattern and
//! accumulates the order imbalance `sum a_i q_i`, which moves the price by
//! `Δp = imbalance / N`. The price change is quantized into a history digit
//! `h(t)` and added to the cognitive price `P(t)`. Background strategies are
//! then evaluated and real positions opened at the updated `P(t)`; finally
//! real closes are settled in player order, followed by a strategy review or,
//! for bankrupt players, a replacement.
//!
//! Within a step the recorder sees all background gains first, then the
//! real and aborted gains of each closing player in player order.

mod config;
mod player;
mod recorder;
pub(crate) mod strategy;
mod types;

pub use config::{GameConfig, Mode, MAX_MEMORY};
pub use player::{best_strategy, resolve, ActionResolution, PlayerState, Review};
pub use recorder::{ActionTotals, CollectingRecorder, NullRecorder, Recorder, RunOutput};
pub use strategy::{pack_pattern, push_digit, random_digit, random_pattern, unpack_pattern, StrategyTable};
pub use types::{
    initial_wealth, initial_wealth_from_uniform, order_quantity, quantize_price_change, settle_round_trip, Action,
    Digit, GainKind, GainRecord, HoldKind, OrderClass, Position, Settlement, StepRecord, TradeRecord,
};

use std::hint::select_unpredictable;

use rand::Rng;
use thiserror::Error;

use crate::rng::{self, GameRng};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EngineError {
    #[error("invalid config field `{field}`: {reason}")]
    InvalidConfig { field: &'static str, reason: String },
    #[error("non-finite {what} ({value})")]
    NonFinite { what: &'static str, value: f64 },
    #[error("non-finite {what} ({value}) at step {t}")]
    NonFiniteAt { what: &'static str, value: f64, t: u64 },
    #[error("integer overflow in {0}")]
    Overflow(&'static str),
}

/// Seed offset of the exogenous history stream.
const EXOGENOUS_STREAM: u64 = 0x6578_6f67; // "exog"

/// Public market variables after the last completed step.
#[derive(Debug, Clone, PartialEq)]
pub struct MarketState {
    pub t: u64,
    pub price: f64,
    pub cognitive_price: i64,
    /// Packed last-M history digits (see [`pack_pattern`]).
    pub pattern: u64,
    pub last_delta: f64,
}

/// Marker for "no pending switch".
const NO_SWITCH: usize = usize::MAX;

/// Open round trip in struct-of-arrays storage. `dir == 0` means flat.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
struct Slot {
    dir: i64,
    open_p: i64,
    open_t: u64,
    qty: i64,
}

impl Slot {
    fn to_position(self) -> Option<Position> {
        let direction = match self.dir {
            1 => Action::Buy,
            -1 => Action::Sell,
            _ => return None,
        };
        Some(Position {
            direction,
            open_time: self.open_t,
            quantity: self.qty,
            open_cognitive_price: self.open_p,
        })
    }

    fn from_position(p: Option<&Position>) -> Slot {
        p.map_or(Slot::default(), |p| Slot {
            dir: p.direction.sign(),
            open_p: p.open_cognitive_price,
            open_t: p.open_time,
            qty: p.quantity,
        })
    }
}

struct ExogenousHistory {
    rng: GameRng,
    pattern: u64,
}

/// A running game.
///
/// Player data is stored column-wise (one vector per field, strategies
/// flattened as `player * S + j`); [`Game::player`] assembles a
/// [`PlayerState`] view on demand.
pub struct Game {
    config: GameConfig,
    market: MarketState,
    rng: GameRng,
    exogenous: Option<ExogenousHistory>,
    pattern_count: u64,

    wealth: Vec<i64>,
    lots: Vec<i64>,
    keys: Vec<u64>,
    gains: Vec<i64>,
    active: Vec<usize>,
    pending: Vec<usize>,
    real: Vec<Slot>,
    virt: Vec<Slot>,
    /// Direction each player opens this step (0 for none).
    opening: Vec<i64>,
    closers: Vec<usize>,
}

impl Game {
    /// Initializes players and an i.i.d. uniform initial history of M digits.
    pub fn new(config: GameConfig) -> Result<Self, EngineError> {
        config.validate()?;
        let n = config.n_players;
        let s = config.n_strategies;
        let mut rng = rng::rng_from_seed(config.seed);
        let mut game = Game {
            market: MarketState {
                t: 0,
                price: config.initial_price,
                cognitive_price: 0,
                pattern: 0,
                last_delta: 0.0,
            },
            exogenous: None,
            pattern_count: config.pattern_count(),
            wealth: vec![0; n],
            lots: vec![0; n],
            keys: vec![0; n * s],
            gains: vec![0; n * s],
            active: vec![0; n],
            pending: vec![NO_SWITCH; n],
            real: vec![Slot::default(); n],
            virt: vec![Slot::default(); n * s],
            opening: vec![0; n],
            closers: vec![0; n],
            rng: rng.clone(),
            config,
        };
        for i in 0..n {
            let p = PlayerState::fresh(s, game.config.memory, game.config.board_lot, &mut rng);
            game.load_player(i, &p);
        }
        game.market.pattern = random_pattern(game.config.memory, &mut rng);
        if game.config.mode == Mode::ExogenousHistory {
            let mut exo_rng = rng::rng_from_seed(rng::mix_seed(game.config.seed, EXOGENOUS_STREAM));
            let pattern = random_pattern(game.config.memory, &mut exo_rng);
            game.exogenous = Some(ExogenousHistory { rng: exo_rng, pattern });
        }
        game.rng = rng;
        Ok(game)
    }

    fn load_player(&mut self, i: usize, p: &PlayerState) {
        let s = self.config.n_strategies;
        assert_eq!(p.strategies.len(), s);
        self.wealth[i] = p.wealth;
        self.lots[i] = order_quantity(p.wealth, self.config.board_lot);
        self.active[i] = p.active_index;
        self.pending[i] = p.pending_switch.unwrap_or(NO_SWITCH);
        self.real[i] = Slot::from_position(p.real_position.as_ref());
        for j in 0..s {
            self.keys[i * s + j] = p.strategies[j].key();
            self.gains[i * s + j] = p.accumulated_gains[j];
            self.virt[i * s + j] = Slot::from_position(p.virtual_positions[j].as_ref());
        }
    }

    pub fn config(&self) -> &GameConfig {
        &self.config
    }

    pub fn market(&self) -> &MarketState {
        &self.market
    }

    pub fn n_players(&self) -> usize {
        self.config.n_players
    }

    /// Snapshot of player `i`.
    pub fn player(&self, i: usize) -> PlayerState {
        let s = self.config.n_strategies;
        let range = i * s..(i + 1) * s;
        PlayerState {
            wealth: self.wealth[i],
            strategies: self.keys[range.clone()]
                .iter()
                .map(|&k| StrategyTable::from_key(k, self.config.memory))
                .collect(),
            active_index: self.active[i],
            accumulated_gains: self.gains[range.clone()].to_vec(),
            real_position: self.real[i].to_position(),
            virtual_positions: self.virt[range].iter().map(|v| v.to_position()).collect(),
            pending_switch: (self.pending[i] != NO_SWITCH).then_some(self.pending[i]),
        }
    }

    pub fn players(&self) -> Vec<PlayerState> {
        (0..self.n_players()).map(|i| self.player(i)).collect()
    }

    pub fn wealths(&self) -> &[i64] {
        &self.wealth
    }

    /// Accumulated strategy gains of player `i`.
    pub fn gains_of(&self, i: usize) -> &[i64] {
        let s = self.config.n_strategies;
        &self.gains[i * s..(i + 1) * s]
    }

    /// Pattern the players will read at the next step.
    pub fn visible_pattern(&self) -> u64 {
        match &self.exogenous {
            Some(exo) => exo.pattern,
            None => self.market.pattern,
        }
    }

    pub fn total_wealth(&self) -> i64 {
        self.wealth.iter().sum()
    }

    /// Recommendation of a random-entry player: flat players open with
    /// probability p in a uniform direction, holders close with probability p
    /// and otherwise keep holding.
    fn random_entry_sign(&mut self, dir: i64) -> i64 {
        let fire = self.rng.random_bool(self.config.random_entry_prob);
        match (fire, dir) {
            (false, _) => dir,
            (true, 0) => {
                if self.rng.random_bool(0.5) {
                    1
                } else {
                    -1
                }
            }
            (true, _) => -dir,
        }
    }

    /// Executes one tick.
    pub fn step<R: Recorder>(&mut self, rec: &mut R) -> Result<StepRecord, EngineError> {
        let t = self.market.t + 1;
        let n = self.config.n_players;
        let s = self.config.n_strategies;
        let board_lot = self.config.board_lot;
        let mode = self.config.mode;
        let pattern = self.visible_pattern();

        let mut out = StepRecord {
            t,
            delta_p: 0.0,
            price: 0.0,
            h: 0,
            cognitive_price: 0,
            active_hold: 0,
            passive_hold: 0,
            buy: 0,
            sell: 0,
            big: 0,
            medium: 0,
            small: 0,
            n_replacements: 0,
            total_wealth: 0,
        };

        // Pass 1: real decisions and the order imbalance. Actions are random,
        // so the per-player update avoids data-dependent branches; closers
        // are collected for the settlement pass.
        //
        // |imbalance| is bounded by the total wealth, which is checked to fit
        // in i64 at the end of every step.
        let mut imbalance: i64 = 0;
        let mut n_closers = 0;
        for i in 0..n {
            if self.pending[i] != NO_SWITCH {
                self.active[i] = self.pending[i];
                self.pending[i] = NO_SWITCH;
            }
            let recommended = match mode {
                Mode::RandomEntry => self.random_entry_sign(self.real[i].dir),
                _ => strategy::recommended_sign(self.keys[i * s + self.active[i]], pattern),
            };
            let slot = self.real[i];
            let flat = slot.dir == 0;
            let opens = flat & (recommended != 0);
            let closes = !flat & (recommended == -slot.dir);
            let passive = !flat & (recommended == slot.dir);
            let trades = opens | closes;
            let qty = select_unpredictable(opens, self.lots[i], select_unpredictable(closes, slot.qty, 0));
            let executed = recommended * trades as i64;
            imbalance += executed * qty;

            out.buy += (executed == 1) as u32;
            out.sell += (executed == -1) as u32;
            out.passive_hold += passive as u32;
            out.active_hold += (recommended == 0) as u32;
            out.big += (qty > 100) as u32;
            out.medium += ((qty > 50) & (qty <= 100)) as u32;
            out.small += (trades & (qty <= 50)) as u32;
            self.opening[i] = opens as i64 * recommended;
            self.closers[n_closers] = i;
            n_closers += closes as usize;
        }

        // Price formation and history update.
        let delta_p = imbalance as f64 / n as f64;
        let price = self.market.price + delta_p;
        if !price.is_finite() {
            return Err(EngineError::NonFiniteAt { what: "price", value: price, t });
        }
        let h = quantize_price_change(delta_p, self.config.cognitive_threshold)
            .map_err(|_| EngineError::NonFiniteAt { what: "price change", value: delta_p, t })?;
        let cp = self.market.cognitive_price + h as i64;

        // Pass 2: background strategies and real opens.
        let strategy_driven = mode != Mode::RandomEntry;
        for i in 0..n {
            if strategy_driven && s > 1 {
                let base = i * s;
                let active = self.active[i];
                for j in 0..s {
                    let recommended = strategy::recommended_sign(self.keys[base + j], pattern);
                    let v = &mut self.virt[base + j];
                    let dir = v.dir;
                    let flat = dir == 0;
                    // The active strategy trades for real, so its slot stays flat.
                    let opens = (j != active) & flat & (recommended != 0);
                    let closes = !flat & (recommended == -dir);
                    let gain = dir * (cp - v.open_p);
                    if closes {
                        rec.on_gain(&GainRecord {
                            t,
                            player_id: i,
                            strategy: j,
                            kind: GainKind::Virtual,
                            direction: if dir > 0 { Action::Buy } else { Action::Sell },
                            open_time: v.open_t,
                            gain,
                        });
                    }
                    let g = &mut self.gains[base + j];
                    *g += select_unpredictable(closes, gain, 0);
                    *v = select_unpredictable(
                        opens,
                        Slot { dir: recommended, open_p: cp, open_t: t, qty: 0 },
                        select_unpredictable(closes, Slot::default(), *v),
                    );
                }
            }
            let d = self.opening[i];
            let r = &mut self.real[i];
            *r = select_unpredictable(d != 0, Slot { dir: d, open_p: cp, open_t: t, qty: self.lots[i] }, *r);
        }

        // Pass 3: real closes in player order, with review or replacement.
        for k in 0..n_closers {
            let i = self.closers[k];
            let base = i * s;
            let active = self.active[i];
            let pos = std::mem::take(&mut self.real[i]);
            let gain = pos.dir * (cp - pos.open_p);
            let wealth_delta = gain.checked_mul(pos.qty).ok_or(EngineError::Overflow("wealth delta"))?;
            let wealth = self.wealth[i]
                .checked_add(wealth_delta)
                .ok_or(EngineError::Overflow("wealth"))?;
            self.wealth[i] = wealth;
            self.gains[base + active] += gain;
            let direction = if pos.dir > 0 { Action::Buy } else { Action::Sell };
            rec.on_gain(&GainRecord {
                t,
                player_id: i,
                strategy: active,
                kind: GainKind::Real,
                direction,
                open_time: pos.open_t,
                gain,
            });
            let bankrupt = wealth < board_lot;
            rec.on_trade(&TradeRecord {
                player_id: i,
                direction,
                open_time: pos.open_t,
                close_time: t,
                quantity: pos.qty,
                strategy_gain: gain,
                wealth_delta,
                caused_bankruptcy: bankrupt,
            });
            if bankrupt {
                let fresh = PlayerState::fresh(s, self.config.memory, board_lot, &mut self.rng);
                self.load_player(i, &fresh);
                out.n_replacements += 1;
                continue;
            }
            self.lots[i] = order_quantity(wealth, board_lot);
            if !strategy_driven {
                continue;
            }
            if let Some(winner) = player::best_strategy(&self.gains[base..base + s], active) {
                let v = std::mem::take(&mut self.virt[base + winner]);
                if v.dir != 0 {
                    let gain = v.dir * (cp - v.open_p);
                    self.gains[base + winner] += gain;
                    rec.on_gain(&GainRecord {
                        t,
                        player_id: i,
                        strategy: winner,
                        kind: GainKind::Aborted,
                        direction: if v.dir > 0 { Action::Buy } else { Action::Sell },
                        open_time: v.open_t,
                        gain,
                    });
                }
                self.pending[i] = winner;
            }
        }

        out.total_wealth = self
            .wealth
            .iter()
            .try_fold(0i64, |acc, w| acc.checked_add(*w))
            .ok_or(EngineError::Overflow("total wealth"))?;

        if let Some(exo) = &mut self.exogenous {
            let d = random_digit(&mut exo.rng);
            exo.pattern = push_digit(exo.pattern, d, self.pattern_count);
        }
        self.market = MarketState {
            t,
            price,
            cognitive_price: cp,
            pattern: push_digit(self.market.pattern, h, self.pattern_count),
            last_delta: delta_p,
        };

        out.delta_p = delta_p;
        out.price = price;
        out.h = h;
        out.cognitive_price = cp;
        rec.on_step(&out);
        Ok(out)
    }
}

/// Runs a full game, feeding every record to `rec`. Returns the final state.
pub fn run_with<R: Recorder>(config: &GameConfig, rec: &mut R) -> Result<Game, EngineError> {
    let mut game = Game::new(config.clone())?;
    for _ in 0..config.n_steps {
        game.step(rec)?;
    }
    Ok(game)
}

/// Runs a full game and collects step and trade logs.
pub fn run(config: &GameConfig) -> Result<RunOutput, EngineError> {
    let mut rec = CollectingRecorder::default();
    let game = run_with(config, &mut rec)?;
    Ok(rec.finish(&game))
}
