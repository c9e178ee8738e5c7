use serde::{Deserialize, Serialize};

use super::{check_samples, FitError, MIN_TAIL};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PowerLawFit {
    pub alpha: f64,
    pub x_min: f64,
    pub ks_distance: f64,
    pub n_tail: usize,
}

/// Continuous maximum-likelihood exponent `1 + n / sum ln(x / x_min)` over
/// the samples `>= x_min`.
pub fn fit_alpha(samples: &[f64], x_min: f64) -> Result<f64, FitError> {
    check_samples(samples)?;
    check_samples(&[x_min])?;
    let (n, sum) = samples
        .iter()
        .filter(|&&x| x >= x_min)
        .fold((0usize, 0.0), |(n, s), &x| (n + 1, s + (x / x_min).ln()));
    if n < MIN_TAIL {
        return Err(FitError::TailTooSmall { needed: MIN_TAIL, got: n });
    }
    if sum <= 0.0 {
        return Err(FitError::DegenerateTail);
    }
    Ok(1.0 + n as f64 / sum)
}

/// KS distance between the empirical CDF of the samples `>= x_min` and the
/// fitted power-law CDF `1 - (x / x_min)^(1 - alpha)`.
pub fn ks_distance(samples: &[f64], x_min: f64, alpha: f64) -> f64 {
    let mut tail: Vec<f64> = samples.iter().copied().filter(|&x| x >= x_min).collect();
    tail.sort_by(f64::total_cmp);
    let logs: Vec<f64> = tail.iter().map(|x| x.ln()).collect();
    let runs = unique_runs(&tail);
    tail_ks(&logs, &runs, 0, alpha)
}

/// [`scan_xmin_with`] using the default minimum tail size.
pub fn scan_xmin(samples: &[f64]) -> Result<PowerLawFit, FitError> {
    scan_xmin_with(samples, MIN_TAIL)
}

/// Tries every distinct sample value as x_min, fits the exponent above it and
/// keeps the fit with the smallest KS distance. Ties go to the smaller x_min.
pub fn scan_xmin_with(samples: &[f64], min_tail: usize) -> Result<PowerLawFit, FitError> {
    let min_tail = min_tail.max(2);
    if samples.len() < 2 * min_tail {
        return Err(FitError::TooFewSamples { needed: 2 * min_tail, got: samples.len() });
    }
    check_samples(samples)?;
    let mut sorted = samples.to_vec();
    sorted.sort_by(f64::total_cmp);
    let logs: Vec<f64> = sorted.iter().map(|x| x.ln()).collect();
    let n = sorted.len();

    let mut suffix = vec![0.0; n + 1];
    for i in (0..n).rev() {
        suffix[i] = suffix[i + 1] + logs[i];
    }
    let runs = unique_runs(&sorted);

    let mut best: Option<PowerLawFit> = None;
    for (k, &(start, _)) in runs.iter().enumerate() {
        let n_tail = n - start;
        if n_tail < min_tail {
            break;
        }
        let ln_min = logs[start];
        let sum = suffix[start] - n_tail as f64 * ln_min;
        if sum <= 0.0 {
            continue;
        }
        let alpha = 1.0 + n_tail as f64 / sum;
        let ks = tail_ks(&logs, &runs[k..], start, alpha);
        if best.is_none_or(|b| ks < b.ks_distance) {
            best = Some(PowerLawFit { alpha, x_min: sorted[start], ks_distance: ks, n_tail });
        }
    }
    best.ok_or(FitError::NoCandidate(min_tail))
}

/// `(first index, end index)` of each run of equal values in sorted data.
fn unique_runs(sorted: &[f64]) -> Vec<(usize, usize)> {
    let mut runs = Vec::new();
    let mut i = 0;
    while i < sorted.len() {
        let mut j = i + 1;
        while j < sorted.len() && sorted[j] == sorted[i] {
            j += 1;
        }
        runs.push((i, j));
        i = j;
    }
    runs
}

/// KS distance over the tail starting at index `start` of the sorted data.
/// The empirical CDF jumps at each run, so both sides of every jump are
/// compared against the fitted CDF.
fn tail_ks(logs: &[f64], runs: &[(usize, usize)], start: usize, alpha: f64) -> f64 {
    let n_tail = (logs.len() - start) as f64;
    let ln_min = logs[start];
    let mut d: f64 = 0.0;
    for &(lo, hi) in runs {
        let fitted = 1.0 - ((1.0 - alpha) * (logs[lo] - ln_min)).exp();
        let below = (lo - start) as f64 / n_tail;
        let above = (hi - start) as f64 / n_tail;
        d = d.max((fitted - below).abs()).max((fitted - above).abs());
    }
    d
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_form_exponent() {
        let alpha = fit_alpha(&[2.0; 12], 1.0).unwrap();
        assert!((alpha - (1.0 + 1.0 / 2f64.ln())).abs() < 1e-12);
    }

    #[test]
    fn fit_alpha_errors() {
        assert_eq!(fit_alpha(&[3.0; 5], 1.0), Err(FitError::TailTooSmall { needed: 10, got: 5 }));
        assert_eq!(fit_alpha(&[3.0; 20], 3.0), Err(FitError::DegenerateTail));
        assert_eq!(fit_alpha(&[1.0, -2.0], 1.0), Err(FitError::BadSample(-2.0)));
        assert!(fit_alpha(&[1.0; 20], 0.0).is_err());
    }

    #[test]
    fn scan_errors() {
        assert!(matches!(scan_xmin(&[1.0; 5]), Err(FitError::TooFewSamples { .. })));
        assert_eq!(scan_xmin(&[4.0; 30]), Err(FitError::NoCandidate(MIN_TAIL)));
    }

    #[test]
    fn runs_group_ties() {
        assert_eq!(unique_runs(&[1.0, 1.0, 2.0, 3.0, 3.0, 3.0]), vec![(0, 2), (2, 3), (3, 6)]);
    }
}
