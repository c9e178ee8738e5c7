//! Command-line front end for the `specgame` library.
//!
//! Every subcommand writes into one output directory and leaves a
//! `manifest.json` there. All other files are deterministic given the same
//! inputs and seed.

pub mod commands;
mod output;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use specgame::{GameConfig, Mode};

pub use output::{output_root, OUT_ENV};

#[derive(Debug, Parser)]
#[command(name = "specgame", version, about = "Speculation Game simulator and stylized-fact analysis")]
pub struct Cli {
    /// Worker threads for trials and bootstrap replicates. Results do not
    /// depend on this.
    #[arg(long, global = true, value_name = "N")]
    pub jobs: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run one game and write its step log, trade log and final wealths.
    Run(RunArgs),
    /// Run a parameter sweep or the ablation suite over many trials.
    Sweep(SweepArgs),
    /// Compute summary statistics of a run directory.
    Analyze(AnalyzeArgs),
    /// Fit a power-law tail to one CSV column.
    Fit(FitArgs),
    /// Write plot-ready tables and a text summary for a run, sweep or fit
    /// directory.
    Report(ReportArgs),
}

/// Game parameters. Flags override values from `--config`.
#[derive(Debug, Clone, Default, Args)]
pub struct GameArgs {
    /// Number of players.
    #[arg(long = "N", value_name = "PLAYERS")]
    pub n_players: Option<usize>,
    /// Strategies per player.
    #[arg(long = "S", value_name = "STRATEGIES")]
    pub n_strategies: Option<usize>,
    /// Memory length.
    #[arg(long = "M", value_name = "MEMORY")]
    pub memory: Option<u32>,
    /// Board lot.
    #[arg(long = "B", value_name = "LOT")]
    pub board_lot: Option<i64>,
    /// Cognitive threshold.
    #[arg(long = "C", value_name = "THRESHOLD")]
    pub cognitive_threshold: Option<f64>,
    /// Number of steps.
    #[arg(long = "T", value_name = "STEPS")]
    pub n_steps: Option<u64>,
    /// Initial price.
    #[arg(long = "p0", value_name = "PRICE")]
    pub initial_price: Option<f64>,
    /// standard, exogenous or random_entry.
    #[arg(long)]
    pub mode: Option<Mode>,
    /// Per-step probability of acting in random_entry mode.
    #[arg(long, value_name = "P")]
    pub entry_prob: Option<f64>,
}

impl GameArgs {
    pub fn apply(&self, c: &mut GameConfig) {
        macro_rules! set {
            ($($f:ident),*) => { $( if let Some(v) = self.$f { c.$f = v; } )* };
        }
        set!(n_players, n_strategies, memory, board_lot, cognitive_threshold, n_steps, initial_price, mode);
        if let Some(p) = self.entry_prob {
            c.random_entry_prob = p;
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct RunArgs {
    /// Game config file (JSON, or TOML by extension).
    #[arg(long, value_name = "FILE")]
    pub config: Option<PathBuf>,
    #[command(flatten)]
    pub game: GameArgs,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Output directory. Defaults to a name derived from the config under
    /// the output root.
    #[arg(long, value_name = "DIR")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    /// Sweep spec file (JSON, or TOML by extension).
    #[arg(long, value_name = "FILE", conflicts_with = "preset", required_unless_present = "preset")]
    pub config: Option<PathBuf>,
    /// A built-in sweep: phase, gini, kurtosis-s, kurtosis-c or ablation.
    #[arg(long)]
    pub preset: Option<String>,
    /// Overrides applied to the sweep's base config.
    #[command(flatten)]
    pub game: GameArgs,
    /// Base seed; trial k uses a seed derived from it and k.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Trials per cell.
    #[arg(long)]
    pub trials: Option<usize>,
    /// Largest lag of the trial-averaged volatility autocorrelation; 0
    /// skips it. The ablation suite defaults to 1000.
    #[arg(long, value_name = "LAG")]
    pub acf_lag: Option<usize>,
    /// Keep every trial's final wealths.
    #[arg(long)]
    pub wealths: bool,
    /// Keep the horizon-gain map of real round trips.
    #[arg(long)]
    pub horizons: bool,
    #[arg(long, value_name = "DIR")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct AnalyzeArgs {
    /// Directory written by `run`.
    pub dir: PathBuf,
    /// Largest lag of the volatility autocorrelation.
    #[arg(long, default_value_t = 1000, value_name = "LAG")]
    pub acf_lag: usize,
    /// Bootstrap replicates for the wealth-tail goodness of fit; 0 skips it.
    #[arg(long, default_value_t = 0)]
    pub bootstrap: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Defaults to `<dir>/analysis`.
    #[arg(long, value_name = "DIR")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct FitArgs {
    /// CSV file holding the samples.
    pub csv: PathBuf,
    /// Column name, or zero-based index.
    #[arg(long, default_value = "0")]
    pub column: String,
    /// Goodness-of-fit bootstrap replicates; 0 skips it.
    #[arg(long, default_value_t = specgame::powerlaw::DEFAULT_BOOTSTRAP)]
    pub bootstrap: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, value_name = "DIR")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct ReportArgs {
    /// Directory with a manifest.
    pub dir: PathBuf,
    /// Largest lag of the volatility autocorrelation for run directories.
    #[arg(long, default_value_t = 1000, value_name = "LAG")]
    pub acf_lag: usize,
    /// Defaults to `<dir>/report`.
    #[arg(long, value_name = "DIR")]
    pub out: Option<PathBuf>,
}

/// Runs a parsed command line and returns the output directory.
pub fn execute(cli: &Cli) -> anyhow::Result<PathBuf> {
    match &cli.command {
        Command::Run(a) => commands::run::run(a),
        Command::Sweep(a) => commands::sweep::sweep(a),
        Command::Analyze(a) => commands::analyze::analyze(a),
        Command::Fit(a) => commands::fit::fit(a),
        Command::Report(a) => commands::report::report(a),
    }
}
