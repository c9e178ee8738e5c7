use super::StatError;

pub fn mean(values: &[f64]) -> Option<f64> {
    if values.is_empty() {
        None
    } else {
        Some(values.iter().sum::<f64>() / values.len() as f64)
    }
}

/// Population standard deviation.
pub fn sigma(values: &[f64]) -> Result<f64, StatError> {
    if values.len() < 2 {
        return Err(StatError::TooFew { needed: 2, got: values.len() });
    }
    let m = mean(values).unwrap();
    let var = values.iter().map(|x| (x - m).powi(2)).sum::<f64>() / values.len() as f64;
    Ok(var.sqrt())
}

/// Excess kurtosis from population moments: `<(x - <x>)^4> / sigma^4 - 3`.
pub fn excess_kurtosis(values: &[f64]) -> Result<f64, StatError> {
    if values.len() < 4 {
        return Err(StatError::TooFew { needed: 4, got: values.len() });
    }
    let n = values.len() as f64;
    let m = values.iter().sum::<f64>() / n;
    let (m2, m4) = values.iter().fold((0.0, 0.0), |(m2, m4), x| {
        let d2 = (x - m) * (x - m);
        (m2 + d2, m4 + d2 * d2)
    });
    let (m2, m4) = (m2 / n, m4 / n);
    if m2 == 0.0 {
        return Err(StatError::Undefined("zero variance"));
    }
    Ok(m4 / (m2 * m2) - 3.0)
}
