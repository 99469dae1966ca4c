//! Exact interventional Shapley values by coalition enumeration.
//!
//! The value of a coalition `S` is the mean model output over a background
//! set when features in `S` are taken from the explained input and all other
//! features from the background row. With `d` features all `2^d` coalitions
//! are evaluated once, so attributions are exact and satisfy efficiency:
//! `base_value + Σ phi = f(x)`.

use std::io::Write;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest feature count accepted by exhaustive enumeration.
pub const MAX_FEATURES: usize = 20;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ShapError {
    #[error("{0} features exceed the exhaustive enumeration limit of {MAX_FEATURES}")]
    TooManyFeatures(usize),
    #[error("background set is empty")]
    EmptyBackground,
    #[error("no explanations or rows supplied")]
    EmptyInput,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
}

pub type Result<T, E = ShapError> = std::result::Result<T, E>;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ShapExplanation {
    pub feature_values: Vec<f64>,
    pub phi: Vec<f64>,
    pub base_value: f64,
    /// Model output at `feature_values`.
    pub prediction: f64,
}

impl ShapExplanation {
    /// `base_value + Σ phi - prediction`; zero up to rounding.
    pub fn efficiency_gap(&self) -> f64 {
        self.base_value + self.phi.iter().sum::<f64>() - self.prediction
    }
}

/// Shapley weight `|S|! (d - |S| - 1)! / d!` for each coalition size.
fn coalition_weights(d: usize) -> Vec<f64> {
    // 1 / (d * C(d-1, s))
    let mut binom = 1.0;
    (0..d)
        .map(|s| {
            if s > 0 {
                binom = binom * (d - s) as f64 / s as f64;
            }
            1.0 / (d as f64 * binom)
        })
        .collect()
}

fn check_inputs(x: &[f64], background: &[Vec<f64>]) -> Result<()> {
    if x.len() > MAX_FEATURES {
        return Err(ShapError::TooManyFeatures(x.len()));
    }
    if background.is_empty() {
        return Err(ShapError::EmptyBackground);
    }
    if let Some(b) = background.iter().find(|b| b.len() != x.len()) {
        return Err(ShapError::DimensionMismatch {
            expected: x.len(),
            got: b.len(),
        });
    }
    Ok(())
}

/// Explains `model` at `x` against `background`.
pub fn explain<F>(model: &F, x: &[f64], background: &[Vec<f64>]) -> Result<ShapExplanation>
where
    F: Fn(&[f64]) -> f64 + Sync,
{
    check_inputs(x, background)?;
    let d = x.len();
    let n_masks = 1usize << d;

    let values: Vec<f64> = (0..n_masks)
        .into_par_iter()
        .map(|mask| {
            let mut z = vec![0.0; d];
            let total: f64 = background
                .iter()
                .map(|b| {
                    for i in 0..d {
                        z[i] = if mask & (1 << i) != 0 { x[i] } else { b[i] };
                    }
                    model(&z)
                })
                .sum();
            total / background.len() as f64
        })
        .collect();

    let weights = coalition_weights(d);
    let phi = (0..d)
        .map(|i| {
            let bit = 1usize << i;
            (0..n_masks)
                .filter(|mask| mask & bit == 0)
                .map(|mask| weights[mask.count_ones() as usize] * (values[mask | bit] - values[mask]))
                .sum()
        })
        .collect();

    Ok(ShapExplanation {
        feature_values: x.to_vec(),
        phi,
        base_value: values[0],
        prediction: model(x),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GlobalImportance {
    pub mean_abs_phi: Vec<f64>,
    /// Feature indices by descending importance; ties by index.
    pub ranking: Vec<usize>,
}

impl GlobalImportance {
    pub fn from_explanations(explanations: &[ShapExplanation]) -> Result<Self> {
        let first = explanations.first().ok_or(ShapError::EmptyInput)?;
        let d = first.phi.len();
        let mut mean_abs_phi = vec![0.0; d];
        for e in explanations {
            if e.phi.len() != d {
                return Err(ShapError::DimensionMismatch {
                    expected: d,
                    got: e.phi.len(),
                });
            }
            for (m, p) in mean_abs_phi.iter_mut().zip(&e.phi) {
                *m += p.abs();
            }
        }
        for m in &mut mean_abs_phi {
            *m /= explanations.len() as f64;
        }
        let mut ranking: Vec<usize> = (0..d).collect();
        ranking.sort_by(|&a, &b| mean_abs_phi[b].total_cmp(&mean_abs_phi[a]).then(a.cmp(&b)));
        Ok(Self { mean_abs_phi, ranking })
    }
}

/// Explains every row and aggregates mean |phi|. Rows are explained in
/// order, so the result does not depend on thread scheduling.
pub fn global_importance<F>(
    model: &F,
    rows: &[Vec<f64>],
    background: &[Vec<f64>],
) -> Result<(GlobalImportance, Vec<ShapExplanation>)>
where
    F: Fn(&[f64]) -> f64 + Sync,
{
    if rows.is_empty() {
        return Err(ShapError::EmptyInput);
    }
    let explanations = rows
        .iter()
        .map(|x| explain(model, x, background))
        .collect::<Result<Vec<_>>>()?;
    Ok((GlobalImportance::from_explanations(&explanations)?, explanations))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BeeswarmPoint {
    pub feature: String,
    pub phi: f64,
    pub value: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BarEntry {
    pub feature: String,
    pub mean_abs_phi: f64,
}

/// Tables behind the beeswarm, bar and heatmap views.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PlotTables {
    pub beeswarm: Vec<BeeswarmPoint>,
    pub bar: Vec<BarEntry>,
    pub feature_names: Vec<String>,
    /// One row of phi per explanation.
    pub heatmap: Vec<Vec<f64>>,
    /// Model output for each heatmap row.
    pub heatmap_fx: Vec<f64>,
}

pub fn emit_plot_data(explanations: &[ShapExplanation], feature_names: &[String]) -> Result<PlotTables> {
    let importance = GlobalImportance::from_explanations(explanations)?;
    let d = feature_names.len();
    if importance.mean_abs_phi.len() != d {
        return Err(ShapError::DimensionMismatch {
            expected: d,
            got: importance.mean_abs_phi.len(),
        });
    }
    let mut beeswarm = Vec::with_capacity(explanations.len() * d);
    for e in explanations {
        for (i, name) in feature_names.iter().enumerate() {
            beeswarm.push(BeeswarmPoint {
                feature: name.clone(),
                phi: e.phi[i],
                value: e.feature_values[i],
            });
        }
    }
    let bar = feature_names
        .iter()
        .zip(&importance.mean_abs_phi)
        .map(|(f, &m)| BarEntry {
            feature: f.clone(),
            mean_abs_phi: m,
        })
        .collect();
    Ok(PlotTables {
        beeswarm,
        bar,
        feature_names: feature_names.to_vec(),
        heatmap: explanations.iter().map(|e| e.phi.clone()).collect(),
        heatmap_fx: explanations.iter().map(|e| e.prediction).collect(),
    })
}

impl PlotTables {
    pub fn write_beeswarm_csv<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "feature,phi,feature_value")?;
        for p in &self.beeswarm {
            writeln!(w, "{},{},{}", p.feature, p.phi, p.value)?;
        }
        Ok(())
    }

    pub fn write_bar_csv<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "feature,mean_abs_phi")?;
        for b in &self.bar {
            writeln!(w, "{},{}", b.feature, b.mean_abs_phi)?;
        }
        Ok(())
    }

    pub fn write_heatmap_csv<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "row,{},f_x", self.feature_names.join(","))?;
        for (r, (phi, fx)) in self.heatmap.iter().zip(&self.heatmap_fx).enumerate() {
            let cells: Vec<String> = phi.iter().map(|v| v.to_string()).collect();
            writeln!(w, "{r},{},{fx}", cells.join(","))?;
        }
        Ok(())
    }

    /// Horizontal bar chart of mean |phi| in an 800×400 viewBox, one
    /// `<rect>` per feature in input order.
    pub fn bar_svg(&self, title: &str) -> String {
        const WIDTH: f64 = 800.0;
        const HEIGHT: f64 = 400.0;
        const LABEL_W: f64 = 160.0;
        const TOP: f64 = 40.0;
        const RIGHT: f64 = 90.0;
        let n = self.bar.len().max(1) as f64;
        let row_h = (HEIGHT - TOP - 10.0) / n;
        let max = self.bar.iter().map(|b| b.mean_abs_phi).fold(0.0, f64::max);
        let scale = if max > 0.0 { (WIDTH - LABEL_W - RIGHT) / max } else { 0.0 };

        let mut s = String::new();
        s.push_str(r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 800 400" width="800" height="400">"#);
        s.push('\n');
        s.push_str(&format!(
            "<text x=\"400\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"16\">{}</text>\n",
            escape(title)
        ));
        for (i, b) in self.bar.iter().enumerate() {
            let y = TOP + i as f64 * row_h;
            let w = b.mean_abs_phi * scale;
            s.push_str(&format!(
                "<text x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\">{}</text>\n",
                LABEL_W - 8.0,
                y + row_h * 0.65,
                escape(&b.feature)
            ));
            s.push_str(&format!(
                "<rect x=\"{LABEL_W:.2}\" y=\"{:.2}\" width=\"{w:.2}\" height=\"{:.2}\" fill=\"#1f77b4\"/>\n",
                y + row_h * 0.15,
                row_h * 0.7
            ));
            s.push_str(&format!(
                "<text x=\"{:.2}\" y=\"{:.2}\" font-family=\"sans-serif\" font-size=\"11\">{:.4}</text>\n",
                LABEL_W + w + 4.0,
                y + row_h * 0.65,
                b.mean_abs_phi
            ));
        }
        s.push_str("</svg>\n");
        s
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weights_sum_to_one_over_coalitions() {
        for d in 1..=12 {
            let w = coalition_weights(d);
            // Σ_s C(d-1, s) w(s) = 1
            let mut binom = 1.0;
            let mut total = 0.0;
            for (s, ws) in w.iter().enumerate() {
                if s > 0 {
                    binom = binom * (d - s) as f64 / s as f64;
                }
                total += binom * ws;
            }
            assert!((total - 1.0).abs() < 1e-12, "d = {d}");
        }
    }

    #[test]
    fn additive_model_with_zero_mean_background() {
        let f = |x: &[f64]| x[0] + x[1];
        let bg = vec![vec![1.0, -2.0], vec![-1.0, 2.0]];
        let e = explain(&f, &[3.0, 5.0], &bg).unwrap();
        assert!((e.phi[0] - 3.0).abs() < 1e-12);
        assert!((e.phi[1] - 5.0).abs() < 1e-12);
        assert_eq!(e.base_value, 0.0);
    }

    #[test]
    fn constant_model() {
        let f = |_: &[f64]| 7.5;
        let bg = vec![vec![0.0, 1.0, 2.0]];
        let e = explain(&f, &[4.0, 4.0, 4.0], &bg).unwrap();
        assert_eq!(e.phi, vec![0.0, 0.0, 0.0]);
        assert_eq!(e.base_value, 7.5);
    }

    #[test]
    fn dummy_feature_is_exactly_zero() {
        let f = |x: &[f64]| (x[0] * 3.0).sin() * x[2] + x[0] * x[0];
        let bg = vec![vec![0.1, 9.0, 0.3], vec![-0.5, 2.0, 1.0], vec![0.7, -3.0, 0.2]];
        let e = explain(&f, &[0.4, 100.0, -2.0], &bg).unwrap();
        assert_eq!(e.phi[1], 0.0);
        assert!(e.efficiency_gap().abs() < 1e-12);
    }

    #[test]
    fn errors() {
        let f = |_: &[f64]| 0.0;
        assert!(matches!(explain(&f, &[1.0], &[]), Err(ShapError::EmptyBackground)));
        let x = vec![0.0; 21];
        assert!(matches!(explain(&f, &x, &[x.clone()]), Err(ShapError::TooManyFeatures(21))));
        assert!(matches!(global_importance(&f, &[], &[vec![0.0]]), Err(ShapError::EmptyInput)));
        assert!(matches!(emit_plot_data(&[], &[]), Err(ShapError::EmptyInput)));
    }

    #[test]
    fn bar_uses_absolute_values() {
        let names = vec!["a".to_string(), "b".to_string()];
        let e1 = ShapExplanation {
            feature_values: vec![1.0, 2.0],
            phi: vec![2.0, -1.0],
            base_value: 0.0,
            prediction: 1.0,
        };
        let e2 = ShapExplanation {
            feature_values: vec![3.0, 4.0],
            phi: vec![-2.0, 1.0],
            base_value: 0.0,
            prediction: -1.0,
        };
        let one = emit_plot_data(std::slice::from_ref(&e1), &names).unwrap();
        assert_eq!(one.bar[0].mean_abs_phi, 2.0);
        assert_eq!(one.bar[1].mean_abs_phi, 1.0);
        let two = emit_plot_data(&[e1, e2], &names).unwrap();
        assert_eq!(two.bar[0].mean_abs_phi, 2.0);
        assert_eq!(two.beeswarm.len(), 4);
        assert_eq!(two.heatmap_fx, vec![1.0, -1.0]);
        let svg = two.bar_svg("test");
        assert!(svg.contains("viewBox=\"0 0 800 400\""));
        assert_eq!(svg.matches("<rect").count(), 2);
    }

    #[test]
    fn ranking_breaks_ties_by_index() {
        let e = ShapExplanation {
            feature_values: vec![0.0; 3],
            phi: vec![1.0, -2.0, 2.0],
            base_value: 0.0,
            prediction: 1.0,
        };
        let g = GlobalImportance::from_explanations(&[e]).unwrap();
        assert_eq!(g.ranking, vec![1, 2, 0]);
    }
}
