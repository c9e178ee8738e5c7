//! Speculation Game: an agent-based market where players trade in round
//! trips with wealth-proportional order sizes, plus the statistics used to
//! study its stylized facts.
//!
//! - [`engine`]: the game itself.
//! - [`analysis`]: returns, volatility autocorrelation, moments, Gini,
//!   CCDFs, order classes, action ratios and round-trip horizons.
//! - [`powerlaw`]: tail fitting with x_min selection, bootstrap
//!   goodness-of-fit and the Vuong test against an exponential.
//! - [`experiments`]: multi-trial runs and parameter sweeps.
//! - [`io`]: CSV logs, sample ingestion and manifests.

pub mod analysis;
pub mod engine;
pub mod experiments;
pub mod io;
pub mod powerlaw;
pub mod rng;

pub use engine::{run, run_with, Game, GameConfig, Mode, RunOutput};
