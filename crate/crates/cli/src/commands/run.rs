use std::io::Write;
use std::path::PathBuf;

use anyhow::Context;
use specgame::engine::run_with;
use specgame::io::{write_wealths, CsvRecorder, Manifest, ManifestKind};
use specgame::GameConfig;

use crate::output::prepare;
use crate::RunArgs;

pub const STEPS_FILE: &str = "steps.csv";
pub const TRADES_FILE: &str = "trades.csv";
pub const WEALTH_FILE: &str = "wealth.csv";

pub fn dir_name(c: &GameConfig) -> String {
    format!(
        "run-N{}-S{}-M{}-B{}-C{}-T{}-p0{}-{}-seed{}",
        c.n_players,
        c.n_strategies,
        c.memory,
        c.board_lot,
        c.cognitive_threshold,
        c.n_steps,
        c.initial_price,
        c.mode.as_str(),
        c.seed
    )
}

pub fn run(args: &RunArgs) -> anyhow::Result<PathBuf> {
    let config = super::load_config(args.config.as_deref(), |c| {
        args.game.apply(c);
        if let Some(s) = args.seed {
            c.seed = s;
        }
    })?;
    let dir = prepare(args.out.as_deref(), || dir_name(&config))?;

    let mut rec = CsvRecorder::create(&dir.join(STEPS_FILE), &dir.join(TRADES_FILE))?;
    let game = run_with(&config, &mut rec)?;
    let (mut steps, mut trades) = rec.finish().context("cannot write logs")?;
    steps.flush().and_then(|_| trades.flush()).context("cannot write logs")?;
    write_wealths(&dir.join(WEALTH_FILE), game.wealths())?;

    let mut manifest = Manifest::new(ManifestKind::Run);
    manifest.config = Some(config);
    manifest.files = [STEPS_FILE, TRADES_FILE, WEALTH_FILE].map(String::from).to_vec();
    manifest.write(&dir)?;
    Ok(dir)
}
