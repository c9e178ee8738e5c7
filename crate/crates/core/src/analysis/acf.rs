use serde::{Deserialize, Serialize};

use super::{ReturnSeries, StatError};

/// Least-squares fit `rho = slope * ln(tau) + intercept`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LogFit {
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AcfResult {
    pub lags: Vec<usize>,
    pub rho: Vec<f64>,
    pub fit: Option<LogFit>,
}

impl AcfResult {
    /// Fits the logarithmic decay over lags in `lo..=hi` and stores it.
    pub fn with_fit(mut self, lo: usize, hi: usize) -> Result<Self, StatError> {
        self.fit = Some(log_fit(&self.lags, &self.rho, lo, hi)?);
        Ok(self)
    }
}

/// Autocorrelation of volatility `|r(t)|` for lags `1..=max_lag`.
///
/// Each lag is the Pearson correlation over the pairs `(|r(t)|, |r(t+tau)|)`
/// where both entries are valid, using the means and variances of those
/// pairs.
pub fn volatility_autocorrelation(returns: &ReturnSeries, max_lag: usize) -> Result<AcfResult, StatError> {
    if max_lag == 0 {
        return Err(StatError::Invalid("max_lag must be positive".into()));
    }
    let n_valid = returns.n_valid();
    if n_valid < max_lag + 2 {
        return Err(StatError::TooFew { needed: max_lag + 2, got: n_valid });
    }
    // Centre on the global mean so the one-pass sums below stay well
    // conditioned; Pearson correlation is shift invariant.
    let centre = returns.valid_values().map(f64::abs).sum::<f64>() / n_valid as f64;
    let vol: Vec<f64> = returns
        .values
        .iter()
        .zip(&returns.valid)
        .map(|(r, ok)| if *ok { r.abs() - centre } else { f64::NAN })
        .collect();
    let global_var = vol.iter().filter(|v| !v.is_nan()).map(|v| v * v).sum::<f64>();
    if global_var == 0.0 {
        return Err(StatError::Undefined("volatility has zero variance"));
    }

    let all_valid = n_valid == vol.len();
    let mut rho = Vec::with_capacity(max_lag);
    for tau in 1..=max_lag {
        let (x, y) = (&vol[..vol.len() - tau], &vol[tau..]);
        let (mut n, mut sx, mut sy, mut sxx, mut syy, mut sxy) = (0usize, 0.0, 0.0, 0.0, 0.0, 0.0);
        if all_valid {
            n = x.len();
            for (a, b) in x.iter().zip(y) {
                sx += a;
                sy += b;
                sxx += a * a;
                syy += b * b;
                sxy += a * b;
            }
        } else {
            for (a, b) in x.iter().zip(y) {
                if a.is_nan() || b.is_nan() {
                    continue;
                }
                n += 1;
                sx += a;
                sy += b;
                sxx += a * a;
                syy += b * b;
                sxy += a * b;
            }
        }
        if n < 2 {
            return Err(StatError::TooFew { needed: 2, got: n });
        }
        let nf = n as f64;
        let cov = sxy - sx * sy / nf;
        let vx = sxx - sx * sx / nf;
        let vy = syy - sy * sy / nf;
        if vx <= 0.0 || vy <= 0.0 {
            return Err(StatError::Undefined("volatility has zero variance at some lag"));
        }
        rho.push((cov / (vx * vy).sqrt()).clamp(-1.0, 1.0));
    }
    Ok(AcfResult { lags: (1..=max_lag).collect(), rho, fit: None })
}

/// Ordinary least squares of `rho` against `ln(tau)` over lags in `lo..=hi`.
pub fn log_fit(lags: &[usize], rho: &[f64], lo: usize, hi: usize) -> Result<LogFit, StatError> {
    if lags.len() != rho.len() {
        return Err(StatError::Invalid("lags and rho differ in length".into()));
    }
    let pts: Vec<(f64, f64)> = lags
        .iter()
        .zip(rho)
        .filter(|(l, _)| (lo..=hi).contains(*l) && **l > 0)
        .map(|(l, r)| ((*l as f64).ln(), *r))
        .collect();
    if pts.len() < 3 {
        return Err(StatError::TooFew { needed: 3, got: pts.len() });
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    if sxx == 0.0 {
        return Err(StatError::Undefined("degenerate lag window"));
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ss_res: f64 = pts.iter().map(|p| (p.1 - slope * p.0 - intercept).powi(2)).sum();
    let ss_tot: f64 = pts.iter().map(|p| (p.1 - my).powi(2)).sum();
    let r_squared = if ss_tot == 0.0 { 1.0 } else { 1.0 - ss_res / ss_tot };
    Ok(LogFit { slope, intercept, r_squared })
}
