//! A deliberately plain re-statement of the game rules, used to check the
//! engine step by step. It shares only the initial draws with the engine:
//! wealths, table contents and the starting history are copied in, and so
//! are the newcomers that replace bankrupt players.

#![allow(dead_code)]

use specgame::engine::{Action, Game};

#[derive(Debug, Clone, PartialEq)]
pub struct OraclePlayer {
    pub wealth: i64,
    pub tables: Vec<Vec<Action>>,
    pub active: usize,
    pub gains: Vec<i64>,
    /// (direction, open time, quantity, P at open)
    pub real: Option<(Action, u64, i64, i64)>,
    /// (direction, open time, P at open)
    pub virt: Vec<Option<(Action, u64, i64)>>,
    pub pending: Option<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OracleTrade {
    pub player: usize,
    pub direction: Action,
    pub open_time: u64,
    pub close_time: u64,
    pub quantity: i64,
    pub gain: i64,
    pub wealth_delta: i64,
    pub bankrupt: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OracleStep {
    pub delta_p: f64,
    pub h: i64,
    pub price: f64,
    pub cognitive_price: i64,
    pub active_hold: u32,
    pub passive_hold: u32,
    pub buy: u32,
    pub sell: u32,
    pub trades: Vec<OracleTrade>,
    pub bankrupt: Vec<usize>,
}

pub struct Oracle {
    pub n: usize,
    pub m: usize,
    pub b: i64,
    pub c: f64,
    pub t: u64,
    pub price: f64,
    pub cog: i64,
    /// Full history, oldest first, including the initial M digits.
    pub history: Vec<i64>,
    pub players: Vec<OraclePlayer>,
}

fn digits_of(mut pattern: u64, m: usize) -> Vec<i64> {
    let mut d = vec![0i64; m];
    for k in (0..m).rev() {
        d[k] = (pattern % 5) as i64 - 2;
        pattern /= 5;
    }
    d
}

fn index_of(window: &[i64]) -> usize {
    let mut idx = 0usize;
    for &d in window {
        idx = idx * 5 + (d + 2) as usize;
    }
    idx
}

pub fn copy_player(game: &Game, i: usize) -> OraclePlayer {
    let p = game.player(i);
    let tables: Vec<Vec<Action>> = p.strategies.iter().map(|t| t.entries().collect()).collect();
    let s = tables.len();
    OraclePlayer {
        wealth: p.wealth,
        tables,
        active: 0,
        gains: vec![0; s],
        real: None,
        virt: vec![None; s],
        pending: None,
    }
}

impl Oracle {
    /// Takes the initial draws from a freshly created game.
    pub fn from_game(game: &Game) -> Oracle {
        let cfg = game.config();
        assert_eq!(game.market().t, 0);
        let m = cfg.memory as usize;
        Oracle {
            n: cfg.n_players,
            m,
            b: cfg.board_lot,
            c: cfg.cognitive_threshold,
            t: 0,
            price: cfg.initial_price,
            cog: 0,
            history: digits_of(game.market().pattern, m),
            players: (0..cfg.n_players).map(|i| copy_player(game, i)).collect(),
        }
    }

    /// One tick. `external` replaces the endogenous history window when set.
    pub fn step(&mut self, external: Option<u64>) -> OracleStep {
        self.t += 1;
        let t = self.t;
        let window = match external {
            Some(p) => digits_of(p, self.m),
            None => self.history[self.history.len() - self.m..].to_vec(),
        };
        let idx = index_of(&window);

        let mut out = OracleStep {
            delta_p: 0.0,
            h: 0,
            price: 0.0,
            cognitive_price: 0,
            active_hold: 0,
            passive_hold: 0,
            buy: 0,
            sell: 0,
            trades: vec![],
            bankrupt: vec![],
        };

        // What each player does for real: 0 hold, 1 open, 2 close.
        let mut what = vec![0u8; self.n];
        let mut qty = vec![0i64; self.n];
        let mut sum: i64 = 0;
        for i in 0..self.n {
            let p = &mut self.players[i];
            if let Some(j) = p.pending.take() {
                p.active = j;
            }
            let rec = p.tables[p.active][idx];
            match p.real {
                None => {
                    if rec == Action::Hold {
                        out.active_hold += 1;
                    } else {
                        what[i] = 1;
                        qty[i] = p.wealth / self.b;
                        assert!(qty[i] >= 1);
                        let a = if rec == Action::Buy { 1 } else { -1 };
                        sum += a * qty[i];
                        if a > 0 { out.buy += 1 } else { out.sell += 1 }
                    }
                }
                Some((dir, _, q, _)) => {
                    if rec == Action::Hold {
                        out.active_hold += 1;
                    } else if rec == dir {
                        out.passive_hold += 1;
                    } else {
                        what[i] = 2;
                        qty[i] = q;
                        let a = if rec == Action::Buy { 1 } else { -1 };
                        sum += a * q;
                        if a > 0 { out.buy += 1 } else { out.sell += 1 }
                    }
                }
            }
        }

        let dp = sum as f64 / self.n as f64;
        let h = if dp > self.c {
            2
        } else if dp > 0.0 {
            1
        } else if dp == 0.0 {
            0
        } else if dp >= -self.c {
            -1
        } else {
            -2
        };
        self.price += dp;
        self.cog += h;
        self.history.push(h);
        let cog = self.cog;

        for i in 0..self.n {
            let p = &mut self.players[i];
            for j in 0..p.tables.len() {
                if j == p.active {
                    continue;
                }
                let rec = p.tables[j][idx];
                match p.virt[j] {
                    None => {
                        if rec != Action::Hold {
                            p.virt[j] = Some((rec, t, cog));
                        }
                    }
                    Some((dir, _, p0)) => {
                        if rec != Action::Hold && rec != dir {
                            let a = if dir == Action::Buy { 1 } else { -1 };
                            p.gains[j] += a * (cog - p0);
                            p.virt[j] = None;
                        }
                    }
                }
            }
            if what[i] == 1 {
                let rec = p.tables[p.active][idx];
                p.real = Some((rec, t, qty[i], cog));
            } else if what[i] == 2 {
                let (dir, t0, q, p0) = p.real.take().unwrap();
                let a = if dir == Action::Buy { 1 } else { -1 };
                let g = a * (cog - p0);
                p.wealth += g * q;
                p.gains[p.active] += g;
                let bankrupt = p.wealth < self.b;
                out.trades.push(OracleTrade {
                    player: i,
                    direction: dir,
                    open_time: t0,
                    close_time: t,
                    quantity: q,
                    gain: g,
                    wealth_delta: g * q,
                    bankrupt,
                });
                if bankrupt {
                    out.bankrupt.push(i);
                } else {
                    let best = *p.gains.iter().max().unwrap();
                    if p.gains[p.active] < best {
                        let j = p.gains.iter().position(|&x| x == best).unwrap();
                        if let Some((dir, _, p0)) = p.virt[j].take() {
                            let a = if dir == Action::Buy { 1 } else { -1 };
                            p.gains[j] += a * (cog - p0);
                        }
                        p.pending = Some(j);
                    }
                }
            }
        }

        out.delta_p = dp;
        out.h = h;
        out.price = self.price;
        out.cognitive_price = cog;
        out
    }

    /// Brings in the newcomers the engine created for bankrupt slots.
    pub fn import_replacements(&mut self, game: &Game, slots: &[usize]) {
        for &i in slots {
            self.players[i] = copy_player(game, i);
        }
    }
}

/// Runs engine and oracle side by side for `config.n_steps` steps and
/// returns a description of the first disagreement, if any. On success
/// returns the number of round trips compared.
pub fn run_lockstep(config: &specgame::GameConfig) -> Result<usize, String> {
    use specgame::engine::{CollectingRecorder, Mode};

    let mut game = Game::new(config.clone()).map_err(|e| e.to_string())?;
    let mut oracle = Oracle::from_game(&game);
    let mut n_trades = 0;
    for _ in 0..config.n_steps {
        let external = (config.mode == Mode::ExogenousHistory).then(|| game.visible_pattern());
        let mut rec = CollectingRecorder::default();
        let s = game.step(&mut rec).map_err(|e| e.to_string())?;
        let o = oracle.step(external);
        let t = s.t;
        let same = s.delta_p == o.delta_p
            && s.h as i64 == o.h
            && s.price == o.price
            && s.cognitive_price == o.cognitive_price
            && (s.active_hold, s.passive_hold, s.buy, s.sell) == (o.active_hold, o.passive_hold, o.buy, o.sell)
            && s.n_replacements as usize == o.bankrupt.len();
        if !same {
            return Err(format!("step {t}: engine {s:?} vs oracle {o:?}"));
        }
        if rec.trades.len() != o.trades.len() {
            return Err(format!("step {t}: {} trades vs {}", rec.trades.len(), o.trades.len()));
        }
        for (e, w) in rec.trades.iter().zip(&o.trades) {
            let ok = e.player_id == w.player
                && e.direction == w.direction
                && e.open_time == w.open_time
                && e.close_time == w.close_time
                && e.quantity == w.quantity
                && e.strategy_gain == w.gain
                && e.wealth_delta == w.wealth_delta
                && e.caused_bankruptcy == w.bankrupt;
            if !ok {
                return Err(format!("step {t}: trade {e:?} vs {w:?}"));
            }
        }
        n_trades += o.trades.len();
        oracle.import_replacements(&game, &o.bankrupt);
        for (i, (e, w)) in game.players().iter().zip(&oracle.players).enumerate() {
            let real = e.real_position.map(|p| (p.direction, p.open_time, p.quantity, p.open_cognitive_price));
            let virt: Vec<_> = e
                .virtual_positions
                .iter()
                .map(|v| v.map(|p| (p.direction, p.open_time, p.open_cognitive_price)))
                .collect();
            let ok = e.wealth == w.wealth
                && e.accumulated_gains == w.gains
                && e.active_index == w.active
                && e.pending_switch == w.pending
                && real == w.real
                && virt == w.virt;
            if !ok {
                return Err(format!("step {t}: player {i} engine {e:?} vs oracle {w:?}"));
            }
        }
    }
    Ok(n_trades)
}
