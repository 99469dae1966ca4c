use serde::{Deserialize, Serialize};

use super::{jacobi_eigen, pearson, Result, StatsError};
use crate::data::{Dataset, Variable};

/// Unrotated principal-factor structure of a correlation matrix.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FactorResult {
    pub labels: Vec<String>,
    pub n_rows: usize,
    /// Descending, clamped at zero.
    pub eigenvalues: Vec<f64>,
    pub variance_fraction: Vec<f64>,
    pub cumulative_fraction: Vec<f64>,
    /// `loadings[variable][factor]` = eigenvector entry × sqrt(eigenvalue).
    pub loadings: Vec<Vec<f64>>,
    pub correlation: Vec<Vec<f64>>,
}

impl FactorResult {
    /// `loadings · loadingsᵀ`, which equals the correlation matrix when all
    /// factors are kept.
    pub fn reconstruct(&self) -> Vec<Vec<f64>> {
        let p = self.loadings.len();
        (0..p)
            .map(|i| {
                (0..p)
                    .map(|j| {
                        self.loadings[i]
                            .iter()
                            .zip(&self.loadings[j])
                            .map(|(a, b)| a * b)
                            .sum()
                    })
                    .collect()
            })
            .collect()
    }
}

/// Factor analysis over the selected columns, using rows complete on the
/// selection.
pub fn factor_analysis(dataset: &Dataset, columns: &[Variable]) -> Result<FactorResult> {
    let rows: Vec<Vec<f64>> = (0..dataset.len())
        .filter_map(|r| columns.iter().map(|&c| dataset.value(r, c)).collect())
        .collect();
    let labels: Vec<String> = columns.iter().map(|c| c.name().to_string()).collect();
    factor_analysis_rows(&rows, &labels)
}

/// Factor analysis of a dense row-major matrix.
pub fn factor_analysis_rows(rows: &[Vec<f64>], labels: &[String]) -> Result<FactorResult> {
    let p = labels.len();
    if p < 2 {
        return Err(StatsError::InvalidSelection("need at least two columns".into()));
    }
    if rows.len() < 3 {
        return Err(StatsError::TooFewRows {
            needed: 3,
            have: rows.len(),
        });
    }
    let columns: Vec<Vec<f64>> = (0..p).map(|j| rows.iter().map(|r| r[j]).collect()).collect();
    let mut correlation = vec![vec![0.0; p]; p];
    for i in 0..p {
        correlation[i][i] = 1.0;
        for j in (i + 1)..p {
            let r = pearson(&columns[i], &columns[j]).map_err(|e| match e {
                StatsError::DegenerateInput => StatsError::SingularInput(if columns[i]
                    .iter()
                    .all(|&v| v == columns[i][0])
                {
                    labels[i].clone()
                } else {
                    labels[j].clone()
                }),
                other => other,
            })?;
            correlation[i][j] = r;
            correlation[j][i] = r;
        }
    }

    let eig = jacobi_eigen(&correlation)?;
    let mut order: Vec<usize> = (0..p).collect();
    order.sort_by(|&a, &b| eig.values[b].total_cmp(&eig.values[a]).then(a.cmp(&b)));

    let eigenvalues: Vec<f64> = order.iter().map(|&k| eig.values[k].max(0.0)).collect();
    let total: f64 = eigenvalues.iter().sum();
    let variance_fraction: Vec<f64> = eigenvalues.iter().map(|l| l / total).collect();
    let cumulative_fraction: Vec<f64> = variance_fraction
        .iter()
        .scan(0.0, |acc, f| {
            *acc += f;
            Some(*acc)
        })
        .collect();

    let mut loadings = vec![vec![0.0; p]; p];
    for (factor, &k) in order.iter().enumerate() {
        let column: Vec<f64> = (0..p).map(|i| eig.vectors[i][k]).collect();
        // Largest-magnitude entry made positive (first one on ties).
        let pivot = column
            .iter()
            .enumerate()
            .fold(0, |best, (i, v)| if v.abs() > column[best].abs() { i } else { best });
        let sign = if column[pivot] < 0.0 { -1.0 } else { 1.0 };
        let scale = eigenvalues[factor].sqrt();
        for i in 0..p {
            loadings[i][factor] = sign * column[i] * scale;
        }
    }

    Ok(FactorResult {
        labels: labels.to_vec(),
        n_rows: rows.len(),
        eigenvalues,
        variance_fraction,
        cumulative_fraction,
        loadings,
        correlation,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data::{generate_synthetic, Feature, Target};

    fn labels(n: usize) -> Vec<String> {
        (0..n).map(|i| format!("v{i}")).collect()
    }

    #[test]
    fn perfectly_correlated_pair() {
        let rows: Vec<Vec<f64>> = (0..10).map(|i| vec![i as f64, 3.0 * i as f64 + 1.0]).collect();
        let f = factor_analysis_rows(&rows, &labels(2)).unwrap();
        assert!((f.eigenvalues[0] - 2.0).abs() < 1e-12);
        assert!(f.eigenvalues[1].abs() < 1e-12);
        assert!((f.cumulative_fraction[1] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn orthogonal_columns_give_unit_eigenvalues() {
        // Columns of a Hadamard-like design are exactly uncorrelated.
        let rows = vec![
            vec![1.0, 1.0, 1.0],
            vec![1.0, -1.0, -1.0],
            vec![-1.0, 1.0, -1.0],
            vec![-1.0, -1.0, 1.0],
        ];
        let f = factor_analysis_rows(&rows, &labels(3)).unwrap();
        for l in &f.eigenvalues {
            assert!((l - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn constant_column_is_singular() {
        let rows: Vec<Vec<f64>> = (0..5).map(|i| vec![i as f64, 2.0]).collect();
        let err = factor_analysis_rows(&rows, &labels(2)).unwrap_err();
        assert!(matches!(err, StatsError::SingularInput(ref l) if l == "v1"));
    }

    #[test]
    fn synthetic_invariants() {
        let ds = generate_synthetic(200, 3, 1.0).unwrap();
        let f = factor_analysis(&ds, &Variable::all()).unwrap();
        let p = 21;
        assert!((f.eigenvalues.iter().sum::<f64>() - p as f64).abs() < 1e-8);
        assert!(f.eigenvalues.windows(2).all(|w| w[0] >= w[1]));
        assert!((f.cumulative_fraction.last().unwrap() - 1.0).abs() < 1e-10);
        let r = f.reconstruct();
        for i in 0..p {
            for j in 0..p {
                assert!((r[i][j] - f.correlation[i][j]).abs() < 1e-8);
            }
        }
        for k in 0..p {
            let col: Vec<f64> = f.loadings.iter().map(|row| row[k]).collect();
            let max = col.iter().cloned().fold(0.0f64, |m, v| if v.abs() > m.abs() { v } else { m });
            assert!(max >= 0.0);
        }
    }

    #[test]
    fn selection_uses_complete_rows() {
        let ds = generate_synthetic(30, 3, 0.0).unwrap();
        let sel = [
            Variable::Feature(Feature::Temperature),
            Variable::Target(Target::Yield),
            Variable::Target(Target::Hhv),
        ];
        let f = factor_analysis(&ds, &sel).unwrap();
        assert_eq!(f.n_rows, 30);
        assert_eq!(f.labels, vec!["temperature_c", "hc_yield", "hc_hhv"]);
    }
}
