use std::io::Write;

use serde::{Deserialize, Serialize};

use super::{spearman, Result, StatsError};
use crate::data::{Dataset, Variable};

/// Minimum number of rows where both variables are present.
pub const MIN_JOINT_ROWS: usize = 3;

/// Pairwise Spearman matrix. `None` marks pairs without enough joint
/// observations (or a constant variable on the joint rows).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CorrelationMatrix {
    pub labels: Vec<String>,
    pub values: Vec<Vec<Option<f64>>>,
}

impl CorrelationMatrix {
    pub fn get(&self, i: usize, j: usize) -> Option<f64> {
        self.values[i][j]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Labeled CSV: a header of labels, one row per variable, empty cells
    /// for absent pairs.
    pub fn write_csv<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "variable,{}", self.labels.join(","))?;
        for (label, row) in self.labels.iter().zip(&self.values) {
            let cells: Vec<String> = row
                .iter()
                .map(|v| v.map(|x| x.to_string()).unwrap_or_default())
                .collect();
            writeln!(w, "{label},{}", cells.join(","))?;
        }
        Ok(())
    }
}

/// Spearman matrix over all 21 dataset columns using pairwise-complete rows.
pub fn correlation_matrix(dataset: &Dataset) -> Result<CorrelationMatrix> {
    correlation_matrix_of(dataset, &Variable::all())
}

pub fn correlation_matrix_of(dataset: &Dataset, vars: &[Variable]) -> Result<CorrelationMatrix> {
    if dataset.len() < MIN_JOINT_ROWS {
        return Err(StatsError::TooFewRows {
            needed: MIN_JOINT_ROWS,
            have: dataset.len(),
        });
    }
    let columns: Vec<Vec<Option<f64>>> = vars
        .iter()
        .map(|&v| (0..dataset.len()).map(|r| dataset.value(r, v)).collect())
        .collect();
    let p = vars.len();
    let mut values = vec![vec![None; p]; p];
    for i in 0..p {
        for j in i..p {
            let (x, y): (Vec<f64>, Vec<f64>) = columns[i]
                .iter()
                .zip(&columns[j])
                .filter_map(|(a, b)| Some(((*a)?, (*b)?)))
                .unzip();
            if x.len() < MIN_JOINT_ROWS {
                continue;
            }
            let r = if i == j {
                // Diagonal is 1 whenever the variable is not constant.
                spearman(&x, &y).ok().map(|_| 1.0)
            } else {
                spearman(&x, &y).ok()
            };
            values[i][j] = r;
            values[j][i] = r;
        }
    }
    Ok(CorrelationMatrix {
        labels: vars.iter().map(|v| v.name().to_string()).collect(),
        values,
    })
}
