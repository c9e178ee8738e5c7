use std::time::Instant;

use specgame::engine::{run_with, NullRecorder};
use specgame::GameConfig;

fn main() {
    let mut cfg = GameConfig::default();
    let args: Vec<String> = std::env::args().collect();
    if let Some(m) = args.get(1) {
        cfg.memory = m.parse().unwrap();
    }
    if let Some(s) = args.get(2) {
        cfg.n_strategies = s.parse().unwrap();
    }
    if let Some(t) = args.get(3) {
        cfg.n_steps = t.parse().unwrap();
    }
    let start = Instant::now();
    let game = run_with(&cfg, &mut NullRecorder).unwrap();
    println!(
        "M={} S={} price={:.2} total_wealth={} in {:.2?}",
        cfg.memory,
        cfg.n_strategies,
        game.market().price,
        game.total_wealth(),
        start.elapsed()
    );
}
