use serde::{Deserialize, Serialize};

use super::{Result, StatsError};

/// Goodness-of-fit summary for one evaluation phase.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MetricsReport {
    pub r2: f64,
    pub rmse: f64,
    pub mae: f64,
    pub n: usize,
}

impl MetricsReport {
    pub fn compute(actual: &[f64], predicted: &[f64]) -> Result<Self> {
        Ok(Self {
            r2: r_squared(actual, predicted)?,
            rmse: rmse(actual, predicted)?,
            mae: mae(actual, predicted)?,
            n: actual.len(),
        })
    }
}

/// Whether MAE carries the ×100 factor printed alongside its definition.
/// The reported MAE magnitudes only agree with `Plain`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum MaeConvention {
    #[default]
    Plain,
    TimesHundred,
}

fn check_lengths(actual: &[f64], predicted: &[f64], min: usize) -> Result<()> {
    if actual.len() != predicted.len() {
        return Err(StatsError::LengthMismatch(actual.len(), predicted.len()));
    }
    if actual.len() < min {
        return Err(StatsError::TooFewRows {
            needed: min,
            have: actual.len(),
        });
    }
    Ok(())
}

/// `1 - SS_res / SS_tot` with `SS_tot` taken about the mean of `actual`.
pub fn r_squared(actual: &[f64], predicted: &[f64]) -> Result<f64> {
    check_lengths(actual, predicted, 2)?;
    let mean = actual.iter().sum::<f64>() / actual.len() as f64;
    let ss_tot: f64 = actual.iter().map(|a| (a - mean).powi(2)).sum();
    if ss_tot == 0.0 || actual.iter().all(|&a| a == actual[0]) {
        return Err(StatsError::DegenerateActual);
    }
    let ss_res: f64 = actual
        .iter()
        .zip(predicted)
        .map(|(a, p)| (p - a).powi(2))
        .sum();
    Ok(1.0 - ss_res / ss_tot)
}

pub fn rmse(actual: &[f64], predicted: &[f64]) -> Result<f64> {
    check_lengths(actual, predicted, 1)?;
    let mse = actual
        .iter()
        .zip(predicted)
        .map(|(a, p)| (p - a).powi(2))
        .sum::<f64>()
        / actual.len() as f64;
    Ok(mse.sqrt())
}

pub fn mae(actual: &[f64], predicted: &[f64]) -> Result<f64> {
    mae_with(actual, predicted, MaeConvention::Plain)
}

pub fn mae_with(actual: &[f64], predicted: &[f64], convention: MaeConvention) -> Result<f64> {
    check_lengths(actual, predicted, 1)?;
    let plain = actual
        .iter()
        .zip(predicted)
        .map(|(a, p)| (a - p).abs())
        .sum::<f64>()
        / actual.len() as f64;
    Ok(match convention {
        MaeConvention::Plain => plain,
        MaeConvention::TimesHundred => plain * 100.0,
    })
}
