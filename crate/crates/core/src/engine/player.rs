use rand::Rng;

use super::strategy::StrategyTable;
use super::types::{initial_wealth, settle_round_trip, Action, HoldKind, Position};
use super::EngineError;

/// What a player (or a background strategy) does with one recommendation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ActionResolution {
    pub recommended: Action,
    pub executed: Action,
    pub hold_kind: HoldKind,
    pub opens: bool,
    pub closes: bool,
}

/// Applies the round-trip rules to a recommendation given the current
/// position.
///
/// Flat: Buy/Sell opens, Hold idles (active hold). Holding: the opening
/// direction becomes a passive hold, Hold stays an active hold, and the
/// reverse direction closes.
#[inline]
pub fn resolve(recommended: Action, position: Option<&Position>) -> ActionResolution {
    let hold = |kind| ActionResolution {
        recommended,
        executed: Action::Hold,
        hold_kind: kind,
        opens: false,
        closes: false,
    };
    match (position, recommended) {
        (_, Action::Hold) => hold(HoldKind::Active),
        (None, dir) => ActionResolution {
            recommended,
            executed: dir,
            hold_kind: HoldKind::None,
            opens: true,
            closes: false,
        },
        (Some(pos), dir) if dir == pos.direction => hold(HoldKind::Passive),
        (Some(_), dir) => ActionResolution {
            recommended,
            executed: dir,
            hold_kind: HoldKind::None,
            opens: false,
            closes: true,
        },
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PlayerState {
    pub wealth: i64,
    pub strategies: Vec<StrategyTable>,
    pub active_index: usize,
    pub accumulated_gains: Vec<i64>,
    pub real_position: Option<Position>,
    pub virtual_positions: Vec<Option<Position>>,
    pub pending_switch: Option<usize>,
}

/// Result of reviewing the accumulated gains after a real close.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Review {
    pub switch_to: Option<usize>,
    /// Background position of the new best strategy that was settled early,
    /// with the gain credited for it.
    pub aborted: Option<(Position, i64)>,
}

impl PlayerState {
    /// A newcomer: wealth drawn as `floor(B + U[0,100))`, fresh random
    /// tables, zero gains, no positions, strategy 0 active.
    pub fn fresh<R: Rng + ?Sized>(n_strategies: usize, memory: u32, board_lot: i64, rng: &mut R) -> Self {
        let wealth = initial_wealth(board_lot, rng);
        let strategies = (0..n_strategies).map(|_| StrategyTable::random(memory, rng)).collect();
        PlayerState::with_tables(wealth, strategies)
    }

    pub fn with_tables(wealth: i64, strategies: Vec<StrategyTable>) -> Self {
        let s = strategies.len();
        PlayerState {
            wealth,
            strategies,
            active_index: 0,
            accumulated_gains: vec![0; s],
            real_position: None,
            virtual_positions: vec![None; s],
            pending_switch: None,
        }
    }

    pub fn active_strategy(&self) -> &StrategyTable {
        &self.strategies[self.active_index]
    }

    /// Resolves the real action for a packed history pattern.
    #[inline]
    pub fn resolve_action(&self, pattern: u64) -> ActionResolution {
        resolve(self.active_strategy().action(pattern), self.real_position.as_ref())
    }

    /// Picks the best accumulated gain; the incumbent wins ties, otherwise
    /// the lowest index does. When the winner has a background position open
    /// it is settled at `cognitive_price_now` and credited before the switch,
    /// which is deferred to the next step via `pending_switch`.
    pub fn review_strategies(&mut self, cognitive_price_now: i64) -> Result<Review, EngineError> {
        let Some(winner) = best_strategy(&self.accumulated_gains, self.active_index) else {
            return Ok(Review { switch_to: None, aborted: None });
        };
        let aborted = match self.virtual_positions[winner].take() {
            Some(pos) => {
                let s = settle_round_trip(&pos, cognitive_price_now)?;
                self.accumulated_gains[winner] += s.strategy_gain;
                Some((pos, s.strategy_gain))
            }
            None => None,
        };
        self.pending_switch = Some(winner);
        Ok(Review { switch_to: Some(winner), aborted })
    }
}

/// Strategy to switch to, if the incumbent `active` no longer has the best
/// accumulated gain. Among several best strategies the lowest index wins.
#[inline]
pub fn best_strategy(gains: &[i64], active: usize) -> Option<usize> {
    let best = *gains.iter().max()?;
    if gains[active] == best {
        None
    } else {
        gains.iter().position(|&g| g == best)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pos(direction: Action, p0: i64) -> Position {
        Position { direction, open_time: 1, quantity: 0, open_cognitive_price: p0 }
    }

    fn player_with_gains(gains: &[i64]) -> PlayerState {
        let tables = (0..gains.len() as u64).map(|k| StrategyTable::from_key(k, 1)).collect();
        let mut p = PlayerState::with_tables(50, tables);
        p.accumulated_gains = gains.to_vec();
        p
    }

    #[test]
    fn resolve_cases() {
        let r = resolve(Action::Buy, None);
        assert_eq!((r.executed, r.opens, r.closes), (Action::Buy, true, false));
        let r = resolve(Action::Hold, None);
        assert_eq!((r.executed, r.hold_kind), (Action::Hold, HoldKind::Active));
        let held = pos(Action::Buy, 0);
        let r = resolve(Action::Buy, Some(&held));
        assert_eq!((r.executed, r.hold_kind, r.opens), (Action::Hold, HoldKind::Passive, false));
        let r = resolve(Action::Hold, Some(&held));
        assert_eq!(r.hold_kind, HoldKind::Active);
        let r = resolve(Action::Sell, Some(&held));
        assert_eq!((r.executed, r.closes), (Action::Sell, true));
        let r = resolve(Action::Buy, Some(&pos(Action::Sell, 0)));
        assert_eq!((r.executed, r.closes), (Action::Buy, true));
    }

    #[test]
    fn review_keeps_incumbent() {
        let mut p = player_with_gains(&[5, 2]);
        assert_eq!(p.review_strategies(0).unwrap().switch_to, None);
        assert_eq!(p.pending_switch, None);
    }

    #[test]
    fn review_switches_on_strict_improvement() {
        let mut p = player_with_gains(&[2, 5]);
        let r = p.review_strategies(0).unwrap();
        assert_eq!(r, Review { switch_to: Some(1), aborted: None });
        assert_eq!(p.pending_switch, Some(1));
        assert_eq!(p.active_index, 0);
    }

    #[test]
    fn review_aborts_open_background_trade() {
        let mut p = player_with_gains(&[2, 5]);
        p.virtual_positions[1] = Some(pos(Action::Buy, 1));
        let r = p.review_strategies(4).unwrap();
        assert_eq!(r.switch_to, Some(1));
        assert_eq!(r.aborted.map(|(_, g)| g), Some(3));
        assert_eq!(p.accumulated_gains, vec![2, 8]);
        assert_eq!(p.virtual_positions[1], None);
    }

    #[test]
    fn review_ties_prefer_incumbent_then_lowest_index() {
        let mut p = player_with_gains(&[3, 3, 1]);
        p.active_index = 1;
        assert_eq!(p.review_strategies(0).unwrap().switch_to, None);
        let mut p = player_with_gains(&[1, 4, 4]);
        assert_eq!(p.review_strategies(0).unwrap().switch_to, Some(1));
    }

    #[test]
    fn single_strategy_never_switches() {
        let mut p = player_with_gains(&[-40]);
        assert_eq!(p.review_strategies(0).unwrap().switch_to, None);
    }

    #[test]
    fn fresh_player_can_order() {
        let mut rng = crate::rng::rng_from_seed(11);
        for _ in 0..100 {
            let p = PlayerState::fresh(3, 4, 9, &mut rng);
            assert!(p.wealth >= 9 && p.wealth <= 108);
            assert_eq!(p.strategies.len(), 3);
            assert_eq!(p.accumulated_gains, vec![0, 0, 0]);
            assert!(p.real_position.is_none());
        }
    }
}
