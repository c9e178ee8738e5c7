use super::StatError;

/// Gini coefficient `sum_ij |w_i - w_j| / (2 n^2 mean)`.
///
/// Evaluated in O(n log n) as `sum_i (2i - n - 1) w_(i) / (n sum w)` over the
/// ascending order statistics.
pub fn gini(wealths: &[f64]) -> Result<f64, StatError> {
    if wealths.is_empty() {
        return Err(StatError::TooFew { needed: 1, got: 0 });
    }
    if wealths.iter().any(|w| !w.is_finite() || *w < 0.0) {
        return Err(StatError::Invalid("wealths must be finite and nonnegative".into()));
    }
    let total: f64 = wealths.iter().sum();
    if total <= 0.0 {
        return Err(StatError::Undefined("total wealth is zero"));
    }
    let mut sorted = wealths.to_vec();
    sorted.sort_by(f64::total_cmp);
    let n = sorted.len() as f64;
    let weighted: f64 = sorted
        .iter()
        .enumerate()
        .map(|(i, w)| (2.0 * (i as f64 + 1.0) - n - 1.0) * w)
        .sum();
    Ok((weighted / (n * total)).clamp(0.0, 1.0))
}

/// Empirical CCDF: `(x, fraction of values >= x)` at each distinct value,
/// ascending.
pub fn ccdf(values: &[f64]) -> Vec<(f64, f64)> {
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    let n = sorted.len() as f64;
    let mut out = Vec::new();
    let mut i = 0;
    while i < sorted.len() {
        let x = sorted[i];
        out.push((x, (sorted.len() - i) as f64 / n));
        while i < sorted.len() && sorted[i] == x {
            i += 1;
        }
    }
    out
}
