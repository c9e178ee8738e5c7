use serde::{Deserialize, Serialize};
use statrs::function::erf::erfc;

use super::{check_samples, FitError, MIN_TAIL, SIGNIFICANCE};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Preferred {
    PowerLaw,
    Exponential,
    Inconclusive,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VuongResult {
    /// Normalized statistic `R / (sqrt(n) * sd)`; positive favours the power law.
    pub likelihood_ratio: f64,
    /// Raw log-likelihood ratio `R`.
    pub log_likelihood_ratio: f64,
    /// Two-sided p-value of the normalized statistic under N(0, 1).
    pub p_value: f64,
    pub preferred: Preferred,
}

/// Vuong's test between a power law and an exponential, both fitted by
/// maximum likelihood to the samples `>= x_min`.
///
/// The exponential is the shifted one, `λ exp(-λ (x - x_min))`, with
/// `λ = 1 / mean(x - x_min)`.
pub fn vuong_test(samples: &[f64], x_min: f64) -> Result<VuongResult, FitError> {
    check_samples(samples)?;
    check_samples(&[x_min])?;
    let tail: Vec<f64> = samples.iter().copied().filter(|&x| x >= x_min).collect();
    let n = tail.len();
    if n < MIN_TAIL {
        return Err(FitError::TailTooSmall { needed: MIN_TAIL, got: n });
    }
    let nf = n as f64;
    let log_sum: f64 = tail.iter().map(|x| (x / x_min).ln()).sum();
    let excess_mean = tail.iter().map(|x| x - x_min).sum::<f64>() / nf;
    if log_sum <= 0.0 || excess_mean <= 0.0 {
        return Err(FitError::DegenerateTail);
    }
    let alpha = 1.0 + nf / log_sum;
    let lambda = 1.0 / excess_mean;

    let ratios: Vec<f64> = tail
        .iter()
        .map(|&x| {
            let power = (alpha - 1.0).ln() - x_min.ln() - alpha * (x / x_min).ln();
            let expo = lambda.ln() - lambda * (x - x_min);
            power - expo
        })
        .collect();
    let r: f64 = ratios.iter().sum();
    let mean = r / nf;
    let var = ratios.iter().map(|l| (l - mean).powi(2)).sum::<f64>() / nf;
    if var <= 0.0 || !var.is_finite() {
        return Err(FitError::DegenerateTail);
    }
    let stat = r / (nf.sqrt() * var.sqrt());
    let p_value = erfc(stat.abs() / std::f64::consts::SQRT_2);
    let preferred = if p_value >= SIGNIFICANCE {
        Preferred::Inconclusive
    } else if stat > 0.0 {
        Preferred::PowerLaw
    } else {
        Preferred::Exponential
    };
    Ok(VuongResult { likelihood_ratio: stat, log_likelihood_ratio: r, p_value, preferred })
}
