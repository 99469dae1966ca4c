//! Evaluation metrics, Spearman correlation and factor analysis.

mod correlation;
mod eigen;
mod factor;
mod metrics;
mod rank;

pub use correlation::{correlation_matrix, correlation_matrix_of, CorrelationMatrix, MIN_JOINT_ROWS};
pub use eigen::{jacobi_eigen, SymmetricEigen};
pub use factor::{factor_analysis, factor_analysis_rows, FactorResult};
pub use metrics::{mae, mae_with, r_squared, rmse, MaeConvention, MetricsReport};
pub use rank::{average_ranks, pearson, spearman, spearman_closed_form};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum StatsError {
    #[error("length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("actual values are all identical; R² is undefined")]
    DegenerateActual,
    #[error("input vector is constant")]
    DegenerateInput,
    #[error("closed-form Spearman requires tie-free input")]
    Ties,
    #[error("too few rows: need at least {needed}, have {have}")]
    TooFewRows { needed: usize, have: usize },
    #[error("column `{0}` has zero variance")]
    SingularInput(String),
    #[error("invalid selection: {0}")]
    InvalidSelection(String),
    #[error("matrix is not square")]
    NotSquare,
    #[error("Jacobi iteration did not converge in {0} sweeps")]
    NoConvergence(usize),
}

pub type Result<T, E = StatsError> = std::result::Result<T, E>;
