use super::StatError;

/// Log returns `r(t) = ln p(t) - ln p(t-1)` with a validity mask.
///
/// An entry is valid only when both prices are positive; invalid entries hold
/// `0.0` and are skipped by every downstream statistic.
#[derive(Debug, Clone, PartialEq)]
pub struct ReturnSeries {
    pub values: Vec<f64>,
    pub valid: Vec<bool>,
}

impl ReturnSeries {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn n_valid(&self) -> usize {
        self.valid.iter().filter(|v| **v).count()
    }

    /// Valid returns only.
    pub fn valid_values(&self) -> impl Iterator<Item = f64> + '_ {
        self.values.iter().zip(&self.valid).filter(|(_, v)| **v).map(|(x, _)| *x)
    }
}

pub fn log_returns(prices: &[f64]) -> Result<ReturnSeries, StatError> {
    if prices.len() < 2 {
        return Err(StatError::TooFew { needed: 2, got: prices.len() });
    }
    let (values, valid) = prices
        .windows(2)
        .map(|w| {
            if w[0] > 0.0 && w[1] > 0.0 && w[0].is_finite() && w[1].is_finite() {
                (w[1].ln() - w[0].ln(), true)
            } else {
                (0.0, false)
            }
        })
        .unzip();
    Ok(ReturnSeries { values, valid })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let r = log_returns(&[100.0, 100.0]).unwrap();
        assert_eq!(r.values, vec![0.0]);
        assert_eq!(r.valid, vec![true]);

        let r = log_returns(&[100.0, 200.0]).unwrap();
        assert!((r.values[0] - 2f64.ln()).abs() < 1e-15);

        let r = log_returns(&[100.0, -5.0, 100.0]).unwrap();
        assert_eq!(r.valid, vec![false, false]);
        assert_eq!(r.n_valid(), 0);

        assert!(log_returns(&[1.0]).is_err());
    }
}
