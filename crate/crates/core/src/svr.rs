//! Epsilon-insensitive support vector regression solved by SMO.
//!
//! The dual is written over `2n` variables (`α` with label +1 and `α*` with
//! label -1) sharing one equality constraint, so each SMO step updates one
//! pair. The first member of the pair is the maximal KKT violator; the second
//! is chosen among violators by the largest second-order decrease of the
//! objective. Iteration stops once the maximal violation gap falls below
//! `tolerance`, which bounds every residual KKT violation by the same amount.

use std::collections::{HashMap, VecDeque};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::Predict;

/// Full Gram matrix is cached up to this many samples; larger problems use
/// an LRU cache of kernel rows.
pub const FULL_CACHE_LIMIT: usize = 2048;
const LRU_ROWS: usize = 512;
const TAU: f64 = 1e-12;
/// Dual coefficients at or below this magnitude are not stored.
pub const SUPPORT_THRESHOLD: f64 = 1e-12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SvrError {
    #[error("empty training set")]
    EmptyInput,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("invalid SVR parameters: {0}")]
    InvalidParams(String),
    #[error("SMO did not converge within {iterations} iterations")]
    NoConvergence { iterations: usize },
}

pub type Result<T, E = SvrError> = std::result::Result<T, E>;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Kernel {
    Linear,
    Polynomial { degree: u32, coef0: f64 },
    Rbf { gamma: f64 },
}

impl Kernel {
    pub fn validate(&self) -> Result<()> {
        match *self {
            Kernel::Linear => Ok(()),
            Kernel::Polynomial { degree, coef0 } => {
                if degree < 1 || !coef0.is_finite() {
                    Err(SvrError::InvalidParams("polynomial degree must be >= 1".into()))
                } else {
                    Ok(())
                }
            }
            Kernel::Rbf { gamma } => {
                if gamma > 0.0 && gamma.is_finite() {
                    Ok(())
                } else {
                    Err(SvrError::InvalidParams("rbf gamma must be > 0".into()))
                }
            }
        }
    }

    /// Unchecked evaluation; `a` and `b` must have equal length.
    #[inline]
    pub fn eval(&self, a: &[f64], b: &[f64]) -> f64 {
        match *self {
            Kernel::Linear => dot(a, b),
            Kernel::Polynomial { degree, coef0 } => (dot(a, b) + coef0).powi(degree as i32),
            Kernel::Rbf { gamma } => {
                let d2: f64 = a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum();
                (-gamma * d2).exp()
            }
        }
    }
}

#[inline]
fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn kernel_eval(kernel: &Kernel, a: &[f64], b: &[f64]) -> Result<f64> {
    if a.len() != b.len() {
        return Err(SvrError::DimensionMismatch {
            expected: a.len(),
            got: b.len(),
        });
    }
    Ok(kernel.eval(a, b))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SvrParams {
    pub c: f64,
    pub epsilon: f64,
    pub kernel: Kernel,
    /// Maximal KKT violation accepted at convergence.
    pub tolerance: f64,
    /// Iteration budget in epochs of `2n` pair updates.
    pub max_passes: usize,
}

impl Default for SvrParams {
    fn default() -> Self {
        Self {
            c: 1.0,
            epsilon: 0.1,
            kernel: Kernel::Rbf { gamma: 0.1 },
            tolerance: 1e-3,
            max_passes: 200,
        }
    }
}

impl SvrParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.c > 0.0 && self.c.is_finite()) {
            return Err(SvrError::InvalidParams("c must be > 0".into()));
        }
        if !(self.epsilon >= 0.0 && self.epsilon.is_finite()) {
            return Err(SvrError::InvalidParams("epsilon must be >= 0".into()));
        }
        if !(self.tolerance > 0.0) {
            return Err(SvrError::InvalidParams("tolerance must be > 0".into()));
        }
        if self.max_passes == 0 {
            return Err(SvrError::InvalidParams("max_passes must be >= 1".into()));
        }
        self.kernel.validate()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SvrModel {
    pub params: SvrParams,
    pub support_vectors: Vec<Vec<f64>>,
    /// `β_i = α_i - α*_i` per stored support vector.
    pub dual_coeffs: Vec<f64>,
    /// Training-row index of each support vector.
    pub support_indices: Vec<usize>,
    pub bias: f64,
    pub n_features: usize,
    /// False when the iteration budget ran out first.
    pub converged: bool,
    pub iterations: usize,
}

impl SvrModel {
    pub fn predict(&self, x: &[f64]) -> Result<f64> {
        if x.len() != self.n_features {
            return Err(SvrError::DimensionMismatch {
                expected: self.n_features,
                got: x.len(),
            });
        }
        Ok(self.predict_row(x))
    }

    /// Surfaces a budget overrun as an error for callers that want one.
    pub fn check_converged(&self) -> Result<()> {
        if self.converged {
            Ok(())
        } else {
            Err(SvrError::NoConvergence {
                iterations: self.iterations,
            })
        }
    }

    /// Dual coefficient of every training row (zero for non-support rows).
    pub fn coefficients_for(&self, n_rows: usize) -> Vec<f64> {
        let mut beta = vec![0.0; n_rows];
        for (&i, &b) in self.support_indices.iter().zip(&self.dual_coeffs) {
            beta[i] = b;
        }
        beta
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("model serializes")
    }

    pub fn from_json(s: &str) -> serde_json::Result<Self> {
        serde_json::from_str(s)
    }
}

impl Predict for SvrModel {
    fn n_features(&self) -> usize {
        self.n_features
    }

    fn predict_row(&self, x: &[f64]) -> f64 {
        let kernel = self.params.kernel;
        self.support_vectors
            .iter()
            .zip(&self.dual_coeffs)
            .map(|(sv, b)| b * kernel.eval(sv, x))
            .sum::<f64>()
            + self.bias
    }
}

enum KernelCache<'a> {
    Full {
        n: usize,
        gram: Vec<f64>,
    },
    Lru {
        x: &'a [Vec<f64>],
        kernel: Kernel,
        rows: HashMap<usize, Vec<f64>>,
        order: VecDeque<usize>,
    },
}

impl<'a> KernelCache<'a> {
    fn new(x: &'a [Vec<f64>], kernel: Kernel) -> Self {
        let n = x.len();
        if n <= FULL_CACHE_LIMIT {
            let mut gram = vec![0.0; n * n];
            for i in 0..n {
                for j in 0..=i {
                    let k = kernel.eval(&x[i], &x[j]);
                    gram[i * n + j] = k;
                    gram[j * n + i] = k;
                }
            }
            KernelCache::Full { n, gram }
        } else {
            KernelCache::Lru {
                x,
                kernel,
                rows: HashMap::new(),
                order: VecDeque::new(),
            }
        }
    }

    fn ensure(&mut self, i: usize) {
        if let KernelCache::Lru {
            x,
            kernel,
            rows,
            order,
        } = self
        {
            if rows.contains_key(&i) {
                if let Some(pos) = order.iter().position(|&r| r == i) {
                    order.remove(pos);
                }
            } else {
                if rows.len() >= LRU_ROWS {
                    if let Some(evict) = order.pop_front() {
                        rows.remove(&evict);
                    }
                }
                let row = x.iter().map(|xj| kernel.eval(&x[i], xj)).collect();
                rows.insert(i, row);
            }
            order.push_back(i);
        }
    }

    /// Runs `f` with kernel rows `i` and `j`.
    fn with_rows<R>(&mut self, i: usize, j: usize, f: impl FnOnce(&[f64], &[f64]) -> R) -> R {
        self.ensure(i);
        self.ensure(j);
        match self {
            KernelCache::Full { n, gram } => f(&gram[i * *n..(i + 1) * *n], &gram[j * *n..(j + 1) * *n]),
            KernelCache::Lru { rows, .. } => f(&rows[&i], &rows[&j]),
        }
    }

    fn with_row<R>(&mut self, i: usize, f: impl FnOnce(&[f64]) -> R) -> R {
        self.with_rows(i, i, |a, _| f(a))
    }
}

struct Solver<'a> {
    n: usize,
    c: f64,
    cache: KernelCache<'a>,
    diag: Vec<f64>,
    alpha: Vec<f64>,
    grad: Vec<f64>,
    linear: Vec<f64>,
}

impl Solver<'_> {
    #[inline]
    fn label(&self, t: usize) -> f64 {
        if t < self.n {
            1.0
        } else {
            -1.0
        }
    }

    /// Maximal violating pair, or `None` when the gap is below `tol`.
    fn select_pair(&mut self, tol: f64) -> Option<(usize, usize)> {
        let l = 2 * self.n;
        let c = self.c;
        let mut g_max = f64::NEG_INFINITY;
        let mut i_sel = None;
        for t in 0..l {
            let v = if t < self.n {
                (self.alpha[t] < c).then(|| -self.grad[t])
            } else {
                (self.alpha[t] > 0.0).then_some(self.grad[t])
            };
            if let Some(v) = v {
                if v >= g_max {
                    g_max = v;
                    i_sel = Some(t);
                }
            }
        }
        let i = i_sel?;
        let n = self.n;
        let (alpha, grad, diag) = (&self.alpha, &self.grad, &self.diag);
        let (g_max2, j_sel) = self.cache.with_row(i % n, |k_i| {
            let mut g_max2 = f64::NEG_INFINITY;
            let mut best_obj = f64::INFINITY;
            let mut j_sel = None;
            for t in 0..2 * n {
                let (eligible, v) = if t < n {
                    (alpha[t] > 0.0, grad[t])
                } else {
                    (alpha[t] < c, -grad[t])
                };
                if !eligible {
                    continue;
                }
                if v >= g_max2 {
                    g_max2 = v;
                }
                let grad_diff = g_max + v;
                if grad_diff > 0.0 {
                    let quad = diag[i % n] + diag[t % n] - 2.0 * k_i[t % n];
                    let quad = if quad > 0.0 { quad } else { TAU };
                    let obj = -(grad_diff * grad_diff) / quad;
                    if obj <= best_obj {
                        best_obj = obj;
                        j_sel = Some(t);
                    }
                }
            }
            (g_max2, j_sel)
        });
        if g_max + g_max2 < tol {
            return None;
        }
        j_sel.map(|j| (i, j))
    }

    fn update_pair(&mut self, i: usize, j: usize) {
        let n = self.n;
        let c = self.c;
        let (yi, yj) = (self.label(i), self.label(j));
        let k_ij = self.cache.with_row(i % n, |k_i| k_i[j % n]);
        let quad = self.diag[i % n] + self.diag[j % n] - 2.0 * k_ij;
        let quad = if quad > 0.0 { quad } else { TAU };
        let (old_i, old_j) = (self.alpha[i], self.alpha[j]);
        let (a, g) = (&mut self.alpha, &self.grad);

        if yi != yj {
            let delta = (-g[i] - g[j]) / quad;
            let diff = a[i] - a[j];
            a[i] += delta;
            a[j] += delta;
            if diff > 0.0 {
                if a[j] < 0.0 {
                    a[j] = 0.0;
                    a[i] = diff;
                }
            } else if a[i] < 0.0 {
                a[i] = 0.0;
                a[j] = -diff;
            }
            if diff > 0.0 {
                if a[i] > c {
                    a[i] = c;
                    a[j] = c - diff;
                }
            } else if a[j] > c {
                a[j] = c;
                a[i] = c + diff;
            }
        } else {
            let delta = (g[i] - g[j]) / quad;
            let sum = a[i] + a[j];
            a[i] -= delta;
            a[j] += delta;
            if sum > c {
                if a[i] > c {
                    a[i] = c;
                    a[j] = sum - c;
                }
            } else if a[j] < 0.0 {
                a[j] = 0.0;
                a[i] = sum;
            }
            if sum > c {
                if a[j] > c {
                    a[j] = c;
                    a[i] = sum - c;
                }
            } else if a[i] < 0.0 {
                a[i] = 0.0;
                a[j] = sum;
            }
        }

        let d_i = (self.alpha[i] - old_i) * yi;
        let d_j = (self.alpha[j] - old_j) * yj;
        let grad = &mut self.grad;
        self.cache.with_rows(i % n, j % n, |k_i, k_j| {
            for t in 0..2 * n {
                let yt = if t < n { 1.0 } else { -1.0 };
                grad[t] += yt * (k_i[t % n] * d_i + k_j[t % n] * d_j);
            }
        });
    }

    /// Recomputes the gradient from alpha, removing accumulated drift.
    fn refresh_gradient(&mut self) {
        let n = self.n;
        let beta: Vec<f64> = (0..n).map(|k| self.alpha[k] - self.alpha[k + n]).collect();
        let mut kb = vec![0.0; n];
        for (k, &b) in beta.iter().enumerate() {
            if b != 0.0 {
                self.cache.with_row(k, |row| {
                    for (acc, kv) in kb.iter_mut().zip(row) {
                        *acc += b * kv;
                    }
                });
            }
        }
        for t in 0..2 * n {
            let yt = self.label(t);
            self.grad[t] = self.linear[t] + yt * kb[t % n];
        }
    }

    /// Bias: mean of `-y_t G_t` over free variables, midpoint of the
    /// feasible interval when none are free.
    fn bias(&self) -> f64 {
        let (mut ub, mut lb) = (f64::INFINITY, f64::NEG_INFINITY);
        let (mut sum_free, mut n_free) = (0.0, 0usize);
        for t in 0..2 * self.n {
            let yg = self.label(t) * self.grad[t];
            let a = self.alpha[t];
            let positive = t < self.n;
            if a >= self.c {
                if positive {
                    lb = lb.max(yg);
                } else {
                    ub = ub.min(yg);
                }
            } else if a <= 0.0 {
                if positive {
                    ub = ub.min(yg);
                } else {
                    lb = lb.max(yg);
                }
            } else {
                n_free += 1;
                sum_free += yg;
            }
        }
        let rho = if n_free > 0 {
            sum_free / n_free as f64
        } else {
            (ub + lb) / 2.0
        };
        -rho
    }
}

pub fn fit_svr(x: &[Vec<f64>], y: &[f64], params: SvrParams) -> Result<SvrModel> {
    params.validate()?;
    if x.is_empty() {
        return Err(SvrError::EmptyInput);
    }
    if x.len() != y.len() {
        return Err(SvrError::DimensionMismatch {
            expected: x.len(),
            got: y.len(),
        });
    }
    let n_features = x[0].len();
    if let Some(row) = x.iter().find(|r| r.len() != n_features) {
        return Err(SvrError::DimensionMismatch {
            expected: n_features,
            got: row.len(),
        });
    }
    if x.len() < 2 {
        return Err(SvrError::EmptyInput);
    }

    let n = x.len();
    let eps = params.epsilon;
    let linear: Vec<f64> = (0..2 * n)
        .map(|t| if t < n { eps - y[t] } else { eps + y[t - n] })
        .collect();
    let diag: Vec<f64> = x.iter().map(|xi| params.kernel.eval(xi, xi)).collect();
    let mut solver = Solver {
        n,
        c: params.c,
        cache: KernelCache::new(x, params.kernel),
        diag,
        alpha: vec![0.0; 2 * n],
        grad: linear.clone(),
        linear,
    };

    let max_iter = params.max_passes.saturating_mul(2 * n);
    let mut iterations = 0;
    let mut converged = false;
    while iterations < max_iter {
        match solver.select_pair(params.tolerance) {
            Some((i, j)) => {
                solver.update_pair(i, j);
                iterations += 1;
            }
            None => {
                // Confirm against a drift-free gradient before stopping.
                solver.refresh_gradient();
                if solver.select_pair(params.tolerance).is_none() {
                    converged = true;
                    break;
                }
            }
        }
    }
    if !converged {
        solver.refresh_gradient();
    }

    let bias = solver.bias();
    let mut support_vectors = Vec::new();
    let mut dual_coeffs = Vec::new();
    let mut support_indices = Vec::new();
    for k in 0..n {
        let beta = solver.alpha[k] - solver.alpha[k + n];
        if beta.abs() > SUPPORT_THRESHOLD {
            support_vectors.push(x[k].clone());
            dual_coeffs.push(beta);
            support_indices.push(k);
        }
    }
    Ok(SvrModel {
        params,
        support_vectors,
        dual_coeffs,
        support_indices,
        bias,
        n_features,
        converged,
        iterations,
    })
}

/// One training sample that fails the epsilon-SVR optimality conditions.
#[derive(Clone, Debug, PartialEq)]
pub struct KktViolation {
    pub index: usize,
    pub dual_coeff: f64,
    pub residual: f64,
    pub rule: &'static str,
}

/// Re-derives the optimality conditions from the model's predictions alone:
///
/// * `β = 0`: `|y - f(x)| <= ε + tol`
/// * `0 < |β| < C`: `|y - f(x)|` within `tol` of `ε`, on the side of `sign(β)`
/// * `|β| = C`: the residual lies on or outside the tube on the side of `sign(β)`
///
/// plus dual feasibility `|β| <= C` and `|Σβ| <= tol`.
pub fn audit_kkt(model: &SvrModel, x: &[Vec<f64>], y: &[f64], tol: f64) -> Vec<KktViolation> {
    let c = model.params.c;
    let eps = model.params.epsilon;
    let beta = model.coefficients_for(x.len());
    let mut out = Vec::new();
    let sum: f64 = beta.iter().sum();
    if sum.abs() > tol {
        out.push(KktViolation {
            index: usize::MAX,
            dual_coeff: sum,
            residual: 0.0,
            rule: "sum of dual coefficients is not zero",
        });
    }
    for (i, (xi, &yi)) in x.iter().zip(y).enumerate() {
        let r = yi - model.predict_row(xi);
        let b = beta[i];
        let rule = if b.abs() > c * (1.0 + 1e-12) {
            Some("dual coefficient exceeds C")
        } else if b.abs() <= SUPPORT_THRESHOLD {
            (r.abs() > eps + tol).then_some("non-support sample outside the tube")
        } else if b.abs() < c {
            let signed = r * b.signum();
            ((signed - eps).abs() > tol).then_some("free support vector off the tube edge")
        } else {
            let signed = r * b.signum();
            (signed < eps - tol).then_some("bounded support vector inside the tube")
        };
        if let Some(rule) = rule {
            out.push(KktViolation {
                index: i,
                dual_coeff: b,
                residual: r,
                rule,
            });
        }
    }
    out
}
