use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::fit::{scan_xmin, PowerLawFit};
use super::{check_samples, FitError, MIN_BOOTSTRAP};
use crate::rng::{mix_seed, rng_from_seed};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GofResult {
    pub p_value: f64,
    /// Replicates that produced a fit.
    pub n_bootstrap: usize,
    /// Replicates whose x_min scan failed; they are left out of `p_value`.
    pub n_failed: usize,
}

/// Inverse-CDF draw `x_min * u^(-1 / (alpha - 1))` with `u` uniform on (0, 1].
pub fn sample_pareto<R: Rng + ?Sized>(x_min: f64, alpha: f64, rng: &mut R) -> f64 {
    let u = 1.0 - rng.random::<f64>();
    x_min * u.powf(-1.0 / (alpha - 1.0))
}

/// Semi-parametric bootstrap p-value of a fitted tail.
///
/// Each replicate has as many samples as the data. Each one comes from the
/// fitted power law with probability `n_tail / n`; otherwise it is drawn
/// uniformly from the observed values below x_min. The replicate is refitted
/// with [`scan_xmin`], and the p-value is the fraction of replicates whose
/// KS distance is at least the observed one. Replicate `r` uses the seed
/// `mix_seed(seed, r)`, so the result does not depend on thread count.
pub fn goodness_of_fit(
    samples: &[f64],
    fit: &PowerLawFit,
    n_bootstrap: usize,
    seed: u64,
) -> Result<GofResult, FitError> {
    if n_bootstrap < MIN_BOOTSTRAP {
        return Err(FitError::TooFewReplicates { needed: MIN_BOOTSTRAP, got: n_bootstrap });
    }
    check_samples(samples)?;
    if !(fit.alpha > 1.0 && fit.alpha.is_finite() && fit.x_min > 0.0 && fit.ks_distance.is_finite()) {
        return Err(FitError::InvalidFit(format!("{fit:?}")));
    }
    let body: Vec<f64> = samples.iter().copied().filter(|&x| x < fit.x_min).collect();
    let n = samples.len();
    let n_tail = n - body.len();
    if n_tail != fit.n_tail {
        return Err(FitError::InvalidFit(format!(
            "fit has {} tail samples but the data has {n_tail} above x_min",
            fit.n_tail
        )));
    }
    let tail_prob = n_tail as f64 / n as f64;

    let replicates: Vec<Option<f64>> = (0..n_bootstrap as u64)
        .into_par_iter()
        .map(|r| {
            let mut rng = rng_from_seed(mix_seed(seed, r));
            let synthetic: Vec<f64> = (0..n)
                .map(|_| {
                    if body.is_empty() || rng.random::<f64>() < tail_prob {
                        sample_pareto(fit.x_min, fit.alpha, &mut rng)
                    } else {
                        body[rng.random_range(0..body.len())]
                    }
                })
                .collect();
            scan_xmin(&synthetic).ok().map(|f| f.ks_distance)
        })
        .collect();

    let ks: Vec<f64> = replicates.iter().flatten().copied().collect();
    if ks.is_empty() {
        return Err(FitError::AllReplicatesFailed);
    }
    let exceed = ks.iter().filter(|&&d| d >= fit.ks_distance).count();
    Ok(GofResult {
        p_value: exceed as f64 / ks.len() as f64,
        n_bootstrap: ks.len(),
        n_failed: n_bootstrap - ks.len(),
    })
}
