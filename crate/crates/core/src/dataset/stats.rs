//! Column statistics used by cleaning and standardization: population
//! z-scores, linear-interpolation percentiles, and the standardized
//! interquartile range (IQR divided by the median).

use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum StatsError {
    #[error("need at least {need} values, got {got}")]
    TooFewValues { need: usize, got: usize },
    #[error("degenerate distribution: population standard deviation is zero")]
    DegenerateDistribution,
    #[error("median is zero; standardized IQR undefined")]
    ZeroMedian,
}

pub fn mean(values: &[f64]) -> f64 {
    values.iter().sum::<f64>() / values.len() as f64
}

/// Population standard deviation (no Bessel correction).
pub fn population_std(values: &[f64]) -> f64 {
    let mu = mean(values);
    (values.iter().map(|v| (v - mu) * (v - mu)).sum::<f64>() / values.len() as f64).sqrt()
}

/// Population z-scores: `(x - mean) / std`.
pub fn z_scores(values: &[f64]) -> Result<Vec<f64>, StatsError> {
    if values.len() < 2 {
        return Err(StatsError::TooFewValues { need: 2, got: values.len() });
    }
    let mu = mean(values);
    let sigma = population_std(values);
    if sigma == 0.0 {
        return Err(StatsError::DegenerateDistribution);
    }
    Ok(values.iter().map(|v| (v - mu) / sigma).collect())
}

/// Percentile by linear interpolation between order statistics: on sorted
/// data the p-quantile sits at rank `(n - 1) * p`, interpolating between the
/// two neighbouring values.
pub fn percentile(sorted: &[f64], p: f64) -> f64 {
    debug_assert!(!sorted.is_empty());
    debug_assert!((0.0..=1.0).contains(&p));
    let rank = (sorted.len() - 1) as f64 * p;
    let lo = rank.floor() as usize;
    let frac = rank - lo as f64;
    if frac == 0.0 || lo + 1 == sorted.len() {
        sorted[lo]
    } else {
        sorted[lo] + frac * (sorted[lo + 1] - sorted[lo])
    }
}

/// Quartiles `(q25, q50, q75)` of unsorted input.
pub fn quartiles(values: &[f64]) -> Result<(f64, f64, f64), StatsError> {
    if values.len() < 4 {
        return Err(StatsError::TooFewValues { need: 4, got: values.len() });
    }
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    Ok((percentile(&sorted, 0.25), percentile(&sorted, 0.50), percentile(&sorted, 0.75)))
}

/// `(Q75 - Q25) / Q50`.
pub fn standardized_iqr(values: &[f64]) -> Result<f64, StatsError> {
    let (q25, q50, q75) = quartiles(values)?;
    if q50 == 0.0 {
        return Err(StatsError::ZeroMedian);
    }
    Ok((q75 - q25) / q50)
}
