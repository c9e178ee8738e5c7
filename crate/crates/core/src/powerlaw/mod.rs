//! Power-law tail fitting: maximum-likelihood exponent, x_min selection by
//! Kolmogorov-Smirnov distance, a semi-parametric bootstrap goodness-of-fit
//! test and Vuong's likelihood-ratio comparison against an exponential tail.
//!
//! Exponents follow the density convention `p(x) ∝ x^-α`, so the CCDF of the
//! tail decays as `x^(1-α)`. Samples are treated as continuous even when they
//! are integer wealth values.

mod fit;
mod gof;
mod vuong;

pub use fit::{fit_alpha, ks_distance, scan_xmin, scan_xmin_with, PowerLawFit};
pub use gof::{goodness_of_fit, sample_pareto, GofResult};
pub use vuong::{vuong_test, Preferred, VuongResult};

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Smallest tail considered when scanning for x_min.
pub const MIN_TAIL: usize = 10;

/// Default number of bootstrap replicates.
pub const DEFAULT_BOOTSTRAP: usize = 1000;

/// Fewest replicates accepted by [`goodness_of_fit`].
pub const MIN_BOOTSTRAP: usize = 100;

/// Significance level used to call a test decisive.
pub const SIGNIFICANCE: f64 = 0.1;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FitError {
    #[error("need at least {needed} samples, got {got}")]
    TooFewSamples { needed: usize, got: usize },
    #[error("tail above x_min has {got} samples, need at least {needed}")]
    TailTooSmall { needed: usize, got: usize },
    #[error("samples must be positive and finite, found {0}")]
    BadSample(f64),
    #[error("all tail samples equal x_min; the exponent is infinite")]
    DegenerateTail,
    #[error("no candidate x_min leaves a tail of {0} samples")]
    NoCandidate(usize),
    #[error("invalid fit: {0}")]
    InvalidFit(String),
    #[error("need at least {needed} bootstrap replicates, got {got}")]
    TooFewReplicates { needed: usize, got: usize },
    #[error("every bootstrap replicate failed")]
    AllReplicatesFailed,
}

/// Everything reported for one fitted dataset.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FitSummary {
    pub alpha: f64,
    pub x_min: f64,
    pub ks: f64,
    pub n_tail: usize,
    pub n_samples: usize,
    pub p_gof: Option<f64>,
    pub n_bootstrap: usize,
    pub vuong_lr: f64,
    pub vuong_p: f64,
    pub vuong_preferred: Preferred,
}

/// Scans x_min, compares against the exponential at that x_min and, when
/// `n_bootstrap > 0`, runs the goodness-of-fit bootstrap.
pub fn fit_summary(samples: &[f64], n_bootstrap: usize, seed: u64) -> Result<FitSummary, FitError> {
    let fit = scan_xmin(samples)?;
    let v = vuong_test(samples, fit.x_min)?;
    let p_gof = if n_bootstrap > 0 {
        Some(goodness_of_fit(samples, &fit, n_bootstrap, seed)?.p_value)
    } else {
        None
    };
    Ok(FitSummary {
        alpha: fit.alpha,
        x_min: fit.x_min,
        ks: fit.ks_distance,
        n_tail: fit.n_tail,
        n_samples: samples.len(),
        p_gof,
        n_bootstrap,
        vuong_lr: v.likelihood_ratio,
        vuong_p: v.p_value,
        vuong_preferred: v.preferred,
    })
}

fn check_samples(samples: &[f64]) -> Result<(), FitError> {
    match samples.iter().find(|x| !(x.is_finite() && **x > 0.0)) {
        Some(&bad) => Err(FitError::BadSample(bad)),
        None => Ok(()),
    }
}
