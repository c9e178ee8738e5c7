//! Statistics computed from run outputs. Everything here is a pure function
//! of its inputs.

mod acf;
mod activity;
mod horizons;
mod inequality;
mod moments;
mod returns;

pub use acf::{log_fit, volatility_autocorrelation, AcfResult, LogFit};
pub use activity::{action_ratios, classify_orders, ActionRatios, OrderClassCounts};
pub use horizons::{horizon_distribution, horizon_gain_map, HorizonGainMap};
pub use inequality::{ccdf, gini};
pub use moments::{excess_kurtosis, mean, sigma};
pub use returns::{log_returns, ReturnSeries};

pub use crate::engine::OrderClass;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum StatError {
    #[error("need at least {needed} values, got {got}")]
    TooFew { needed: usize, got: usize },
    #[error("statistic undefined: {0}")]
    Undefined(&'static str),
    #[error("invalid input: {0}")]
    Invalid(String),
}
