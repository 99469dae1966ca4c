use serde::{Deserialize, Serialize};

use super::{DataError, Dataset, Result, Variable};

/// Per-column standardization with population (divide-by-n) deviation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Scaler {
    pub names: Vec<String>,
    pub means: Vec<f64>,
    pub stds: Vec<f64>,
}

impl Scaler {
    /// Fits on the rows of a dense matrix. `names` labels the columns for
    /// error reporting.
    pub fn fit(rows: &[Vec<f64>], names: &[String]) -> Result<Self> {
        let n_cols = names.len();
        if rows.is_empty() {
            return Err(DataError::TooFewRows { needed: 2, have: 0 });
        }
        if let Some(bad) = rows.iter().find(|r| r.len() != n_cols) {
            return Err(DataError::InvalidArgument(format!(
                "row has {} columns, expected {n_cols}",
                bad.len()
            )));
        }
        let n = rows.len() as f64;
        let mut means = vec![0.0; n_cols];
        let mut stds = vec![0.0; n_cols];
        for j in 0..n_cols {
            let first = rows[0][j];
            if rows.iter().all(|r| r[j] == first) {
                return Err(DataError::ConstantColumn(names[j].clone()));
            }
            let mean = rows.iter().map(|r| r[j]).sum::<f64>() / n;
            let var = rows.iter().map(|r| (r[j] - mean).powi(2)).sum::<f64>() / n;
            means[j] = mean;
            stds[j] = var.sqrt();
        }
        Ok(Self {
            names: names.to_vec(),
            means,
            stds,
        })
    }

    /// Fits a single column.
    pub fn fit_column(values: &[f64], name: &str) -> Result<Self> {
        let rows: Vec<Vec<f64>> = values.iter().map(|&v| vec![v]).collect();
        Self::fit(&rows, &[name.to_string()])
    }

    pub fn n_columns(&self) -> usize {
        self.means.len()
    }

    pub fn transform(&self, x: &[f64]) -> Vec<f64> {
        x.iter()
            .zip(self.means.iter().zip(&self.stds))
            .map(|(v, (m, s))| (v - m) / s)
            .collect()
    }

    pub fn inverse_transform(&self, z: &[f64]) -> Vec<f64> {
        z.iter()
            .zip(self.means.iter().zip(&self.stds))
            .map(|(v, (m, s))| v * s + m)
            .collect()
    }

    pub fn transform_rows(&self, rows: &[Vec<f64>]) -> Vec<Vec<f64>> {
        rows.iter().map(|r| self.transform(r)).collect()
    }

    /// Scalar helpers for single-column scalers.
    pub fn transform_value(&self, v: f64) -> f64 {
        (v - self.means[0]) / self.stds[0]
    }

    pub fn inverse_value(&self, z: f64) -> f64 {
        z * self.stds[0] + self.means[0]
    }
}

/// Fits a scaler on `rows` of the dataset over the selected columns. Callers
/// pass the training split; rows missing a selected value are skipped.
pub fn fit_scaler(dataset: &Dataset, rows: &[usize], columns: &[Variable]) -> Result<Scaler> {
    let matrix: Vec<Vec<f64>> = rows
        .iter()
        .filter_map(|&i| columns.iter().map(|&c| dataset.value(i, c)).collect())
        .collect();
    let names: Vec<String> = columns.iter().map(|c| c.name().to_string()).collect();
    Scaler::fit(&matrix, &names)
}
