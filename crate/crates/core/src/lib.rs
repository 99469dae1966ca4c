//! Surrogate modeling toolkit for hydrothermal carbonization (HTC) of biomass.
//!
//! Decision-tree and epsilon-SVR regressors are trained per hydrochar
//! response, evaluated with R²/RMSE/MAE, explained with exact interventional
//! Shapley values and then searched by a real-coded genetic algorithm for
//! process conditions suited to a hydrochar application.

pub mod cart;
pub mod data;
pub mod gaopt;
pub mod pipeline;
pub mod shapley;
pub mod stats;
pub mod svr;

/// Version tag written into every JSON artifact.
pub const SCHEMA_VERSION: u32 = 1;

/// A fitted regressor that maps one input row to a prediction.
///
/// Implementations assume the row has the dimension the model was fitted
/// on; the checked entry points live on the concrete model types.
pub trait Predict: Sync {
    fn n_features(&self) -> usize;
    fn predict_row(&self, x: &[f64]) -> f64;
}
