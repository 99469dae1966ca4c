//! Per-target training protocol: shared 80/20 split, k-fold grid search on
//! the training portion, refit, and train/test evaluation on the original
//! target scale.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cart::{fit_tree, CartError, RegressionTree, TreeParams};
use crate::data::{split, DataError, Dataset, Feature, Scaler, SplitPlan, Target};
use crate::stats::{rmse, MetricsReport, StatsError};
use crate::svr::{fit_svr, Kernel, SvrError, SvrModel, SvrParams};
use crate::{Predict, SCHEMA_VERSION};

pub const TEST_FRACTION: f64 = 0.2;
pub const DEFAULT_FOLDS: usize = 5;
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error("too few rows: need at least {needed}, have {have}")]
    TooFewRows { needed: usize, have: usize },
    #[error("hyperparameter grid is empty")]
    EmptyGrid,
    #[error("no evaluation rows")]
    EmptyInput,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error(transparent)]
    Data(#[from] DataError),
    #[error(transparent)]
    Cart(#[from] CartError),
    #[error(transparent)]
    Svr(#[from] SvrError),
    #[error(transparent)]
    Stats(#[from] StatsError),
    #[error("grid file: {0}")]
    Grid(String),
}

pub type Result<T, E = PipelineError> = std::result::Result<T, E>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModelKind {
    Dtr,
    Svr,
}

impl ModelKind {
    pub const ALL: [ModelKind; 2] = [ModelKind::Dtr, ModelKind::Svr];

    pub fn name(self) -> &'static str {
        match self {
            ModelKind::Dtr => "dtr",
            ModelKind::Svr => "svr",
        }
    }
}

/// One grid entry of either family.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "lowercase")]
pub enum Candidate {
    Dtr(TreeParams),
    Svr(SvrParams),
}

impl Candidate {
    pub fn kind(&self) -> ModelKind {
        match self {
            Candidate::Dtr(_) => ModelKind::Dtr,
            Candidate::Svr(_) => ModelKind::Svr,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HyperGrid {
    pub tree_grid: Vec<TreeParams>,
    pub svr_grid: Vec<SvrParams>,
}

impl Default for HyperGrid {
    /// Depth {4,6,8,10,12,16,∞} × min leaf {1,2,5,10} for trees;
    /// C {0.1,1,10,100} × ε {0.01,0.1,0.5} × kernel {linear, rbf γ ∈ {0.05,0.1,0.5}} for SVR.
    fn default() -> Self {
        let mut tree_grid = Vec::new();
        for depth in [Some(4), Some(6), Some(8), Some(10), Some(12), Some(16), None] {
            for leaf in [1, 2, 5, 10] {
                tree_grid.push(TreeParams {
                    max_depth: depth,
                    min_samples_leaf: leaf,
                    ..TreeParams::default()
                });
            }
        }
        let kernels = [
            Kernel::Linear,
            Kernel::Rbf { gamma: 0.05 },
            Kernel::Rbf { gamma: 0.1 },
            Kernel::Rbf { gamma: 0.5 },
        ];
        let mut svr_grid = Vec::new();
        for c in [0.1, 1.0, 10.0, 100.0] {
            for epsilon in [0.01, 0.1, 0.5] {
                for kernel in kernels {
                    svr_grid.push(SvrParams {
                        c,
                        epsilon,
                        kernel,
                        ..SvrParams::default()
                    });
                }
            }
        }
        Self { tree_grid, svr_grid }
    }
}

impl HyperGrid {
    /// At least one family must be non-empty; `train_all` rejects a requested
    /// family without candidates.
    pub fn validate(&self) -> Result<()> {
        if self.tree_grid.is_empty() && self.svr_grid.is_empty() {
            return Err(PipelineError::EmptyGrid);
        }
        for t in &self.tree_grid {
            t.validate()?;
        }
        for s in &self.svr_grid {
            s.validate()?;
        }
        Ok(())
    }

    pub fn candidates(&self, kind: ModelKind) -> Vec<Candidate> {
        match kind {
            ModelKind::Dtr => self.tree_grid.iter().copied().map(Candidate::Dtr).collect(),
            ModelKind::Svr => self.svr_grid.iter().copied().map(Candidate::Svr).collect(),
        }
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let grid: Self = serde_json::from_str(s).map_err(|e| PipelineError::Grid(e.to_string()))?;
        grid.validate()?;
        Ok(grid)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("grid serializes")
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", content = "model", rename_all = "lowercase")]
pub enum TrainedModel {
    Dtr(RegressionTree),
    Svr(SvrModel),
}

impl TrainedModel {
    fn predict_scaled(&self, z: &[f64]) -> f64 {
        match self {
            TrainedModel::Dtr(t) => t.predict_row(z),
            TrainedModel::Svr(m) => m.predict_row(z),
        }
    }
}

/// A fitted model with the transforms needed to predict from raw inputs.
struct Fitted {
    model: TrainedModel,
    scaler_in: Scaler,
    scaler_out: Option<Scaler>,
}

impl Fitted {
    fn predict(&self, x: &[f64]) -> f64 {
        let raw = self.model.predict_scaled(&self.scaler_in.transform(x));
        match &self.scaler_out {
            Some(s) => s.inverse_value(raw),
            None => raw,
        }
    }
}

/// Column standardizer for model inputs. A column with zero spread keeps
/// unit deviation so that it maps to a constant.
pub fn fit_input_scaler(x: &[Vec<f64>]) -> Result<Scaler> {
    let first = x.first().ok_or(PipelineError::EmptyInput)?;
    let d = first.len();
    let n = x.len() as f64;
    let mut means = vec![0.0; d];
    let mut stds = vec![1.0; d];
    for j in 0..d {
        let mean = x.iter().map(|r| r[j]).sum::<f64>() / n;
        let var = x.iter().map(|r| (r[j] - mean).powi(2)).sum::<f64>() / n;
        means[j] = mean;
        if var > 0.0 {
            stds[j] = var.sqrt();
        }
    }
    let names = if d == Feature::COUNT {
        Feature::ALL.iter().map(|f| f.column().to_string()).collect()
    } else {
        (0..d).map(|j| format!("x{j}")).collect()
    };
    Ok(Scaler { names, means, stds })
}

fn fit_candidate(x: &[Vec<f64>], y: &[f64], candidate: &Candidate) -> Result<Fitted> {
    let scaler_in = fit_input_scaler(x)?;
    let z = scaler_in.transform_rows(x);
    Ok(match candidate {
        Candidate::Dtr(p) => Fitted {
            model: TrainedModel::Dtr(fit_tree(&z, y, *p)?),
            scaler_in,
            scaler_out: None,
        },
        Candidate::Svr(p) => {
            let scaler_out = Scaler::fit_column(y, "target")?;
            let yz: Vec<f64> = y.iter().map(|&v| scaler_out.transform_value(v)).collect();
            Fitted {
                model: TrainedModel::Svr(fit_svr(&z, &yz, *p)?),
                scaler_in,
                scaler_out: Some(scaler_out),
            }
        }
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridSearchResult {
    pub chosen_index: usize,
    pub chosen: Candidate,
    pub cv_rmse: f64,
    /// The chosen candidate's validation RMSE per fold.
    pub fold_rmses: Vec<f64>,
    /// Mean validation RMSE of every candidate, in grid order.
    pub candidate_cv_rmse: Vec<f64>,
}

/// Grid search with seeded k-fold assignment.
pub fn grid_search(
    x: &[Vec<f64>],
    y: &[f64],
    candidates: &[Candidate],
    k: usize,
    seed: u64,
) -> Result<GridSearchResult> {
    if x.len() < k {
        return Err(PipelineError::TooFewRows { needed: k, have: x.len() });
    }
    let folds = crate::data::kfold_assignments(x.len(), k, seed)?;
    grid_search_folds(x, y, &folds, k, candidates)
}

/// Grid search over explicit fold ids in `0..k`. Every fold must hold at
/// least one row and leave at least two rows for fitting.
pub fn grid_search_folds(
    x: &[Vec<f64>],
    y: &[f64],
    folds: &[usize],
    k: usize,
    candidates: &[Candidate],
) -> Result<GridSearchResult> {
    if candidates.is_empty() {
        return Err(PipelineError::EmptyGrid);
    }
    if x.len() != y.len() || x.len() != folds.len() {
        return Err(PipelineError::DimensionMismatch {
            expected: x.len(),
            got: y.len().min(folds.len()),
        });
    }
    let mut counts = vec![0usize; k];
    for &f in folds {
        if f >= k {
            return Err(PipelineError::Grid(format!("fold id {f} outside 0..{k}")));
        }
        counts[f] += 1;
    }
    if counts.iter().any(|&c| c == 0 || x.len() - c < 2) {
        return Err(PipelineError::TooFewRows {
            needed: k.max(3),
            have: x.len(),
        });
    }

    let per_fold: Vec<(Vec<Vec<f64>>, Vec<f64>, Vec<Vec<f64>>, Vec<f64>)> = (0..k)
        .map(|fold| {
            let (mut xt, mut yt, mut xv, mut yv) = (Vec::new(), Vec::new(), Vec::new(), Vec::new());
            for i in 0..x.len() {
                if folds[i] == fold {
                    xv.push(x[i].clone());
                    yv.push(y[i]);
                } else {
                    xt.push(x[i].clone());
                    yt.push(y[i]);
                }
            }
            (xt, yt, xv, yv)
        })
        .collect();

    let scores: Vec<Vec<f64>> = candidates
        .par_iter()
        .map(|cand| {
            per_fold
                .iter()
                .map(|(xt, yt, xv, yv)| {
                    let fitted = fit_candidate(xt, yt, cand)?;
                    let pred: Vec<f64> = xv.iter().map(|r| fitted.predict(r)).collect();
                    Ok(rmse(yv, &pred)?)
                })
                .collect::<Result<Vec<f64>>>()
        })
        .collect::<Result<_>>()?;

    let candidate_cv_rmse: Vec<f64> = scores
        .iter()
        .map(|s| s.iter().sum::<f64>() / s.len() as f64)
        .collect();
    let mut chosen_index = 0;
    for (i, &score) in candidate_cv_rmse.iter().enumerate() {
        if score < candidate_cv_rmse[chosen_index] {
            chosen_index = i;
        }
    }
    debug_assert!(candidate_cv_rmse
        .iter()
        .all(|&s| candidate_cv_rmse[chosen_index] <= s || s.is_nan()));

    Ok(GridSearchResult {
        chosen_index,
        chosen: candidates[chosen_index],
        cv_rmse: candidate_cv_rmse[chosen_index],
        fold_rmses: scores[chosen_index].clone(),
        candidate_cv_rmse,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TargetStats {
    pub mean: f64,
    /// Population deviation of the training targets.
    pub std: f64,
}

/// A model for one response, ready to predict from raw feature rows.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrainedTarget {
    pub schema_version: u32,
    pub tool_version: String,
    pub target: Target,
    pub model_kind: ModelKind,
    pub model: TrainedModel,
    pub scaler_in: Scaler,
    /// Present for SVR only; trees fit the raw target.
    pub scaler_out: Option<Scaler>,
    pub chosen_params: Candidate,
    pub cv_rmse: f64,
    pub fold_rmses: Vec<f64>,
    pub train_metrics: MetricsReport,
    pub test_metrics: MetricsReport,
    pub target_stats: TargetStats,
    /// Per-feature (min, max) over the training rows.
    pub input_bounds: Vec<(f64, f64)>,
    pub seed: u64,
    pub dataset_fingerprint: String,
}

impl TrainedTarget {
    /// Prediction on the original target scale.
    pub fn predict(&self, x: &[f64]) -> f64 {
        let raw = self.model.predict_scaled(&self.scaler_in.transform(x));
        match &self.scaler_out {
            Some(s) => s.inverse_value(raw),
            None => raw,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("model serializes")
    }

    pub fn from_json(s: &str) -> serde_json::Result<Self> {
        serde_json::from_str(s)
    }
}

impl Predict for TrainedTarget {
    fn n_features(&self) -> usize {
        self.scaler_in.n_columns()
    }

    fn predict_row(&self, x: &[f64]) -> f64 {
        self.predict(x)
    }
}

/// Metrics of `model` on raw rows `x` against original-scale `y`.
pub fn evaluate(model: &TrainedTarget, x: &[Vec<f64>], y: &[f64]) -> Result<MetricsReport> {
    if x.is_empty() {
        return Err(PipelineError::EmptyInput);
    }
    if x.len() != y.len() {
        return Err(PipelineError::DimensionMismatch {
            expected: x.len(),
            got: y.len(),
        });
    }
    let d = model.scaler_in.n_columns();
    if let Some(bad) = x.iter().find(|r| r.len() != d) {
        return Err(PipelineError::DimensionMismatch {
            expected: d,
            got: bad.len(),
        });
    }
    let pred: Vec<f64> = x.iter().map(|r| model.predict(r)).collect();
    Ok(MetricsReport::compute(y, &pred)?)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportEntry {
    pub train: MetricsReport,
    pub test: MetricsReport,
    pub params: Candidate,
    pub cv_rmse: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SkippedTarget {
    pub model: ModelKind,
    pub target: Target,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EvaluationReport {
    pub schema_version: u32,
    pub tool_version: String,
    pub seed: u64,
    pub n_rows: usize,
    pub n_train: usize,
    pub n_test: usize,
    pub dataset_fingerprint: String,
    pub models: BTreeMap<ModelKind, BTreeMap<Target, ReportEntry>>,
    pub skipped: Vec<SkippedTarget>,
}

impl EvaluationReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn entry(&self, kind: ModelKind, target: Target) -> Option<&ReportEntry> {
        self.models.get(&kind)?.get(&target)
    }
}

#[derive(Clone, Debug)]
pub struct TrainingOutcome {
    pub report: EvaluationReport,
    /// Ordered by model kind, then target.
    pub models: Vec<TrainedTarget>,
    pub plan: SplitPlan,
}

/// The shared split used by every target.
pub fn shared_split(dataset: &Dataset, seed: u64) -> Result<SplitPlan> {
    Ok(split(dataset.len(), TEST_FRACTION, DEFAULT_FOLDS, seed)?)
}

struct TargetContext<'a> {
    dataset: &'a Dataset,
    plan: &'a SplitPlan,
    seed: u64,
    fingerprint: &'a str,
}

fn train_target(
    ctx: &TargetContext<'_>,
    kind: ModelKind,
    target: Target,
    candidates: &[Candidate],
) -> Result<TrainedTarget> {
    let (train_rows, y_train) = ctx.dataset.present_rows(&ctx.plan.train_indices, target);
    let (test_rows, y_test) = ctx.dataset.present_rows(&ctx.plan.test_indices, target);
    let k = ctx.plan.k;
    if train_rows.len() < 2 * k {
        return Err(PipelineError::TooFewRows {
            needed: 2 * k,
            have: train_rows.len(),
        });
    }
    if test_rows.len() < 2 {
        return Err(PipelineError::TooFewRows {
            needed: 2,
            have: test_rows.len(),
        });
    }
    let folds: Vec<usize> = train_rows
        .iter()
        .map(|&r| ctx.plan.fold_of(r).expect("training row has a fold"))
        .collect();
    let x_train = ctx.dataset.feature_matrix(&train_rows);
    let x_test = ctx.dataset.feature_matrix(&test_rows);

    let search = grid_search_folds(&x_train, &y_train, &folds, k, candidates)?;
    let fitted = fit_candidate(&x_train, &y_train, &search.chosen)?;

    let n = y_train.len() as f64;
    let mean = y_train.iter().sum::<f64>() / n;
    let std = (y_train.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n).sqrt();

    let mut trained = TrainedTarget {
        schema_version: SCHEMA_VERSION,
        tool_version: TOOL_VERSION.to_string(),
        target,
        model_kind: kind,
        model: fitted.model,
        scaler_in: fitted.scaler_in,
        scaler_out: fitted.scaler_out,
        chosen_params: search.chosen,
        cv_rmse: search.cv_rmse,
        fold_rmses: search.fold_rmses,
        train_metrics: MetricsReport {
            r2: 0.0,
            rmse: 0.0,
            mae: 0.0,
            n: 0,
        },
        test_metrics: MetricsReport {
            r2: 0.0,
            rmse: 0.0,
            mae: 0.0,
            n: 0,
        },
        target_stats: TargetStats { mean, std },
        input_bounds: ctx.dataset.feature_bounds(&train_rows),
        seed: ctx.seed,
        dataset_fingerprint: ctx.fingerprint.to_string(),
    };
    trained.train_metrics = evaluate(&trained, &x_train, &y_train)?;
    trained.test_metrics = evaluate(&trained, &x_test, &y_test)?;
    Ok(trained)
}

/// Trains every (family, target) pair in `kinds × Target::ALL`. Per-target
/// failures are recorded as skips; only an unusable split is an error.
pub fn train_all(dataset: &Dataset, grid: &HyperGrid, seed: u64, kinds: &[ModelKind]) -> Result<TrainingOutcome> {
    for &kind in kinds {
        if grid.candidates(kind).is_empty() {
            return Err(PipelineError::EmptyGrid);
        }
    }
    let plan = shared_split(dataset, seed)?;
    let fingerprint = dataset.fingerprint();
    let ctx = TargetContext {
        dataset,
        plan: &plan,
        seed,
        fingerprint: &fingerprint,
    };

    let mut kinds: Vec<ModelKind> = kinds.to_vec();
    kinds.sort();
    kinds.dedup();
    let jobs: Vec<(ModelKind, Target)> = kinds
        .iter()
        .flat_map(|&k| Target::ALL.iter().map(move |&t| (k, t)))
        .collect();
    let results: Vec<Result<TrainedTarget>> = jobs
        .par_iter()
        .map(|&(kind, target)| train_target(&ctx, kind, target, &grid.candidates(kind)))
        .collect();

    let mut models = Vec::new();
    let mut report_models: BTreeMap<ModelKind, BTreeMap<Target, ReportEntry>> = BTreeMap::new();
    let mut skipped = Vec::new();
    for (&(kind, target), result) in jobs.iter().zip(results) {
        match result {
            Ok(t) => {
                report_models.entry(kind).or_default().insert(
                    target,
                    ReportEntry {
                        train: t.train_metrics,
                        test: t.test_metrics,
                        params: t.chosen_params,
                        cv_rmse: t.cv_rmse,
                    },
                );
                models.push(t);
            }
            Err(e) => skipped.push(SkippedTarget {
                model: kind,
                target,
                reason: e.to_string(),
            }),
        }
    }

    let report = EvaluationReport {
        schema_version: SCHEMA_VERSION,
        tool_version: TOOL_VERSION.to_string(),
        seed,
        n_rows: dataset.len(),
        n_train: plan.train_indices.len(),
        n_test: plan.test_indices.len(),
        dataset_fingerprint: fingerprint,
        models: report_models,
        skipped,
    };
    Ok(TrainingOutcome { report, models, plan })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cart::Node;

    fn identity_scaler(d: usize) -> Scaler {
        Scaler {
            names: (0..d).map(|j| format!("x{j}")).collect(),
            means: vec![0.0; d],
            stds: vec![1.0; d],
        }
    }

    fn blank_metrics() -> MetricsReport {
        MetricsReport {
            r2: 0.0,
            rmse: 0.0,
            mae: 0.0,
            n: 0,
        }
    }

    fn wrap_tree(tree: RegressionTree) -> TrainedTarget {
        TrainedTarget {
            schema_version: SCHEMA_VERSION,
            tool_version: TOOL_VERSION.into(),
            target: Target::Yield,
            model_kind: ModelKind::Dtr,
            scaler_in: identity_scaler(tree.n_features),
            model: TrainedModel::Dtr(tree),
            scaler_out: None,
            chosen_params: Candidate::Dtr(TreeParams::default()),
            cv_rmse: 0.0,
            fold_rmses: vec![],
            train_metrics: blank_metrics(),
            test_metrics: blank_metrics(),
            target_stats: TargetStats { mean: 0.0, std: 1.0 },
            input_bounds: vec![],
            seed: 0,
            dataset_fingerprint: String::new(),
        }
    }

    #[test]
    fn default_grid_shape() {
        let g = HyperGrid::default();
        assert_eq!(g.tree_grid.len(), 28);
        assert_eq!(g.svr_grid.len(), 48);
        g.validate().unwrap();
        let back = HyperGrid::from_json(&g.to_json()).unwrap();
        assert_eq!(back, g);
    }

    #[test]
    fn single_family_grid() {
        let g = HyperGrid {
            tree_grid: vec![TreeParams::with_depth(Some(2))],
            svr_grid: vec![],
        };
        g.validate().unwrap();
        let ds = crate::data::generate_synthetic(60, 1, 0.1).unwrap();
        assert!(matches!(train_all(&ds, &g, 1, &[ModelKind::Svr]), Err(PipelineError::EmptyGrid)));
        assert!(matches!(
            HyperGrid { tree_grid: vec![], svr_grid: vec![] }.validate(),
            Err(PipelineError::EmptyGrid)
        ));
    }

    #[test]
    fn hand_built_two_leaf_tree_metrics() {
        let tree = RegressionTree::from_nodes(
            1,
            TreeParams::default(),
            vec![
                Node::Internal {
                    feature: 0,
                    threshold: 1.5,
                    left: 1,
                    right: 2,
                },
                Node::Leaf { value: 1.0, n_samples: 2 },
                Node::Leaf { value: 3.0, n_samples: 2 },
            ],
        )
        .unwrap();
        let model = wrap_tree(tree);
        let x = vec![vec![0.0], vec![1.0], vec![2.0], vec![3.0]];
        let y = [0.0, 2.0, 2.0, 4.0];
        let m = evaluate(&model, &x, &y).unwrap();
        // residuals -1, 1, -1, 1; SST = 8
        assert_eq!(m.rmse, 1.0);
        assert_eq!(m.mae, 1.0);
        assert_eq!(m.r2, 0.5);
    }

    #[test]
    fn evaluate_rejects_empty_and_mismatch() {
        let tree = RegressionTree::from_nodes(1, TreeParams::default(), vec![Node::Leaf { value: 0.0, n_samples: 1 }])
            .unwrap();
        let model = wrap_tree(tree);
        assert!(matches!(evaluate(&model, &[], &[]), Err(PipelineError::EmptyInput)));
        assert!(matches!(
            evaluate(&model, &[vec![1.0, 2.0]], &[1.0]),
            Err(PipelineError::DimensionMismatch { .. })
        ));
    }

    fn step_data(n: usize) -> (Vec<Vec<f64>>, Vec<f64>) {
        let x: Vec<Vec<f64>> = (0..n).map(|i| vec![i as f64, ((i * 7) % 11) as f64]).collect();
        let y = x.iter().map(|r| if r[0] < 20.0 { 1.0 } else { 5.0 }).collect();
        (x, y)
    }

    #[test]
    fn single_entry_grid() {
        let (x, y) = step_data(40);
        let cands = [Candidate::Dtr(TreeParams::with_depth(Some(1)))];
        let r = grid_search(&x, &y, &cands, 5, 1).unwrap();
        assert_eq!(r.chosen_index, 0);
        assert_eq!(r.fold_rmses.len(), 5);
        let mean = r.fold_rmses.iter().sum::<f64>() / 5.0;
        assert_eq!(r.cv_rmse, mean);
    }

    #[test]
    fn duplicate_candidates_first_wins() {
        let (x, y) = step_data(40);
        let c = Candidate::Dtr(TreeParams::with_depth(Some(2)));
        let cands = [Candidate::Dtr(TreeParams::with_depth(Some(0))), c, c];
        let r = grid_search(&x, &y, &cands, 5, 3).unwrap();
        assert_eq!(r.chosen_index, 1);
        assert_eq!(r.candidate_cv_rmse[1], r.candidate_cv_rmse[2]);
    }

    #[test]
    fn too_few_rows() {
        let (x, y) = step_data(3);
        let cands = [Candidate::Dtr(TreeParams::default())];
        assert!(matches!(
            grid_search(&x, &y, &cands, 5, 0),
            Err(PipelineError::TooFewRows { .. })
        ));
    }

    #[test]
    fn svr_candidate_runs_on_original_scale() {
        let x: Vec<Vec<f64>> = (0..30).map(|i| vec![i as f64]).collect();
        let y: Vec<f64> = x.iter().map(|r| 1000.0 + 50.0 * r[0]).collect();
        let cands = [Candidate::Svr(SvrParams {
            c: 100.0,
            epsilon: 0.01,
            kernel: Kernel::Linear,
            ..SvrParams::default()
        })];
        let r = grid_search(&x, &y, &cands, 5, 0).unwrap();
        // ε = 0.01 standardized units of a ~433 spread target
        assert!(r.cv_rmse < 10.0, "cv_rmse = {}", r.cv_rmse);
    }

    #[test]
    fn input_scaler_tolerates_constant_column() {
        let x = vec![vec![1.0, 5.0], vec![3.0, 5.0]];
        let s = fit_input_scaler(&x).unwrap();
        assert_eq!(s.means, vec![2.0, 5.0]);
        assert_eq!(s.stds, vec![1.0, 1.0]);
    }
}
