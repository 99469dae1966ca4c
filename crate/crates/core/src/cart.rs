//! CART regression trees grown by greedy SSE reduction.
//!
//! Candidate thresholds are midpoints between consecutive distinct values of
//! each feature among the node's samples; a row goes left when
//! `x[feature] <= threshold`. Among splits with equal child SSE the lowest
//! feature index wins, then the smallest threshold, so fits are reproducible
//! bit for bit.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::Predict;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CartError {
    #[error("empty training set")]
    EmptyInput,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("invalid tree parameters: {0}")]
    InvalidParams(String),
    #[error("non-finite value in training data")]
    NonFinite,
    #[error("malformed tree: {0}")]
    Malformed(String),
}

pub type Result<T, E = CartError> = std::result::Result<T, E>;

/// Pre-pruning controls.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TreeParams {
    /// `None` grows until another criterion binds.
    pub max_depth: Option<usize>,
    pub min_samples_split: usize,
    pub min_samples_leaf: usize,
    /// Minimum of `(parent SSE - children SSE) / n_train` required to split.
    pub min_impurity_decrease: f64,
}

impl Default for TreeParams {
    fn default() -> Self {
        Self {
            max_depth: None,
            min_samples_split: 2,
            min_samples_leaf: 1,
            min_impurity_decrease: 0.0,
        }
    }
}

impl TreeParams {
    pub fn with_depth(max_depth: Option<usize>) -> Self {
        Self {
            max_depth,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.min_samples_split < 2 {
            return Err(CartError::InvalidParams("min_samples_split must be >= 2".into()));
        }
        if self.min_samples_leaf < 1 {
            return Err(CartError::InvalidParams("min_samples_leaf must be >= 1".into()));
        }
        if !(self.min_impurity_decrease >= 0.0) {
            return Err(CartError::InvalidParams("min_impurity_decrease must be >= 0".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Node {
    Internal {
        feature: usize,
        threshold: f64,
        left: usize,
        right: usize,
    },
    Leaf {
        value: f64,
        n_samples: usize,
    },
}

/// Arena-allocated tree; node 0 is the root.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RegressionTree {
    pub n_features: usize,
    pub params: TreeParams,
    pub nodes: Vec<Node>,
}

struct Split {
    feature: usize,
    threshold: f64,
    child_sse: f64,
}

struct Grower<'a> {
    x: &'a [Vec<f64>],
    y: &'a [f64],
    params: TreeParams,
    n_total: f64,
    nodes: Vec<Node>,
}

impl Grower<'_> {
    fn leaf(&mut self, idx: &[usize]) -> usize {
        let first = self.y[idx[0]];
        let value = if idx.iter().all(|&i| self.y[i] == first) {
            first
        } else {
            idx.iter().map(|&i| self.y[i]).sum::<f64>() / idx.len() as f64
        };
        self.nodes.push(Node::Leaf {
            value,
            n_samples: idx.len(),
        });
        self.nodes.len() - 1
    }

    fn best_split(&self, idx: &[usize]) -> Option<(Split, f64)> {
        let n = idx.len();
        let mean = idx.iter().map(|&i| self.y[i]).sum::<f64>() / n as f64;
        let parent_sse: f64 = idx.iter().map(|&i| (self.y[i] - mean).powi(2)).sum();
        let min_leaf = self.params.min_samples_leaf;

        let mut best: Option<Split> = None;
        let mut order = idx.to_vec();
        let mut prefix = Vec::with_capacity(n);
        for feature in 0..self.x[0].len() {
            order.sort_by(|&a, &b| self.x[a][feature].total_cmp(&self.x[b][feature]).then(a.cmp(&b)));
            prefix.clear();
            let (mut s, mut sq) = (0.0, 0.0);
            for &i in &order {
                let d = self.y[i] - mean;
                s += d;
                sq += d * d;
                prefix.push((s, sq));
            }
            let (s_tot, sq_tot) = prefix[n - 1];
            for pos in (min_leaf - 1)..(n - min_leaf) {
                let lo = self.x[order[pos]][feature];
                let hi = self.x[order[pos + 1]][feature];
                if lo >= hi {
                    continue;
                }
                let n_l = (pos + 1) as f64;
                let n_r = (n - pos - 1) as f64;
                let (s_l, sq_l) = prefix[pos];
                let sse_l = sq_l - s_l * s_l / n_l;
                let s_r = s_tot - s_l;
                let sse_r = (sq_tot - sq_l) - s_r * s_r / n_r;
                let child_sse = sse_l + sse_r;
                if best.as_ref().is_none_or(|b| child_sse < b.child_sse) {
                    let mut threshold = lo + (hi - lo) / 2.0;
                    if threshold >= hi {
                        threshold = lo;
                    }
                    best = Some(Split {
                        feature,
                        threshold,
                        child_sse,
                    });
                }
            }
        }
        best.map(|b| (b, parent_sse))
    }

    fn grow(&mut self, idx: Vec<usize>, depth: usize) -> usize {
        let n = idx.len();
        let first = self.y[idx[0]];
        let constant = idx.iter().all(|&i| self.y[i] == first);
        let depth_ok = self.params.max_depth.is_none_or(|d| depth < d);
        if constant
            || !depth_ok
            || n < self.params.min_samples_split
            || n < 2 * self.params.min_samples_leaf
        {
            return self.leaf(&idx);
        }
        let Some((split, parent_sse)) = self.best_split(&idx) else {
            return self.leaf(&idx);
        };
        let decrease = ((parent_sse - split.child_sse) / self.n_total).max(0.0);
        if decrease < self.params.min_impurity_decrease {
            return self.leaf(&idx);
        }

        let (left_idx, right_idx): (Vec<usize>, Vec<usize>) = idx
            .into_iter()
            .partition(|&i| self.x[i][split.feature] <= split.threshold);
        let slot = self.nodes.len();
        self.nodes.push(Node::Leaf {
            value: 0.0,
            n_samples: 0,
        });
        let left = self.grow(left_idx, depth + 1);
        let right = self.grow(right_idx, depth + 1);
        self.nodes[slot] = Node::Internal {
            feature: split.feature,
            threshold: split.threshold,
            left,
            right,
        };
        slot
    }
}

pub fn fit_tree(x: &[Vec<f64>], y: &[f64], params: TreeParams) -> Result<RegressionTree> {
    params.validate()?;
    if x.is_empty() || y.is_empty() {
        return Err(CartError::EmptyInput);
    }
    if x.len() != y.len() {
        return Err(CartError::DimensionMismatch {
            expected: x.len(),
            got: y.len(),
        });
    }
    let n_features = x[0].len();
    if let Some(row) = x.iter().find(|r| r.len() != n_features) {
        return Err(CartError::DimensionMismatch {
            expected: n_features,
            got: row.len(),
        });
    }
    if y.iter().chain(x.iter().flatten()).any(|v| !v.is_finite()) {
        return Err(CartError::NonFinite);
    }

    let mut grower = Grower {
        x,
        y,
        params,
        n_total: y.len() as f64,
        nodes: Vec::new(),
    };
    if n_features == 0 {
        grower.leaf(&(0..y.len()).collect::<Vec<_>>());
    } else {
        grower.grow((0..y.len()).collect(), 0);
    }
    Ok(RegressionTree {
        n_features,
        params,
        nodes: grower.nodes,
    })
}

impl RegressionTree {
    /// Builds a tree from explicit nodes, checking child links.
    pub fn from_nodes(n_features: usize, params: TreeParams, nodes: Vec<Node>) -> Result<Self> {
        if nodes.is_empty() {
            return Err(CartError::Malformed("no nodes".into()));
        }
        for (i, node) in nodes.iter().enumerate() {
            if let Node::Internal {
                feature,
                left,
                right,
                ..
            } = *node
            {
                if feature >= n_features || left >= nodes.len() || right >= nodes.len() || left <= i || right <= i {
                    return Err(CartError::Malformed(format!("bad links at node {i}")));
                }
            }
        }
        Ok(Self {
            n_features,
            params,
            nodes,
        })
    }

    /// Index of the leaf reached by `x`.
    pub fn leaf_index(&self, x: &[f64]) -> usize {
        let mut at = 0;
        loop {
            match self.nodes[at] {
                Node::Leaf { .. } => return at,
                Node::Internal {
                    feature,
                    threshold,
                    left,
                    right,
                } => at = if x[feature] <= threshold { left } else { right },
            }
        }
    }

    pub fn predict(&self, x: &[f64]) -> Result<f64> {
        if x.len() != self.n_features {
            return Err(CartError::DimensionMismatch {
                expected: self.n_features,
                got: x.len(),
            });
        }
        Ok(self.predict_row(x))
    }

    pub fn n_leaves(&self) -> usize {
        self.nodes.iter().filter(|n| matches!(n, Node::Leaf { .. })).count()
    }

    /// Longest root-to-leaf path, in edges.
    pub fn depth(&self) -> usize {
        fn walk(nodes: &[Node], at: usize) -> usize {
            match nodes[at] {
                Node::Leaf { .. } => 0,
                Node::Internal { left, right, .. } => 1 + walk(nodes, left).max(walk(nodes, right)),
            }
        }
        walk(&self.nodes, 0)
    }

    /// Features used by at least one split.
    pub fn used_features(&self) -> Vec<usize> {
        let mut used: Vec<usize> = self
            .nodes
            .iter()
            .filter_map(|n| match n {
                Node::Internal { feature, .. } => Some(*feature),
                Node::Leaf { .. } => None,
            })
            .collect();
        used.sort_unstable();
        used.dedup();
        used
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("tree serializes")
    }

    pub fn from_json(s: &str) -> serde_json::Result<Self> {
        serde_json::from_str(s)
    }
}

impl Predict for RegressionTree {
    fn n_features(&self) -> usize {
        self.n_features
    }

    fn predict_row(&self, x: &[f64]) -> f64 {
        match self.nodes[self.leaf_index(x)] {
            Node::Leaf { value, .. } => value,
            Node::Internal { .. } => unreachable!("leaf_index returns a leaf"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_target_is_single_leaf() {
        let x = vec![vec![1.0], vec![2.0], vec![3.0]];
        let t = fit_tree(&x, &[4.0, 4.0, 4.0], TreeParams::default()).unwrap();
        assert_eq!(t.nodes.len(), 1);
        assert_eq!(t.predict(&[10.0]).unwrap(), 4.0);
    }

    #[test]
    fn two_point_split() {
        let x = vec![vec![0.0], vec![1.0]];
        let t = fit_tree(&x, &[0.0, 10.0], TreeParams::default()).unwrap();
        assert_eq!(t.nodes.len(), 3);
        match t.nodes[0] {
            Node::Internal { feature, threshold, .. } => {
                assert_eq!(feature, 0);
                assert_eq!(threshold, 0.5);
            }
            _ => panic!("expected split"),
        }
        assert_eq!(t.predict(&[0.2]).unwrap(), 0.0);
        assert_eq!(t.predict(&[0.7]).unwrap(), 10.0);
        assert_eq!(t.predict(&[0.5]).unwrap(), 0.0);
    }

    #[test]
    fn dimension_checks() {
        let x = vec![vec![0.0], vec![1.0]];
        assert!(matches!(fit_tree(&x, &[1.0], TreeParams::default()), Err(CartError::DimensionMismatch { .. })));
        assert!(matches!(fit_tree(&[], &[], TreeParams::default()), Err(CartError::EmptyInput)));
        let t = fit_tree(&x, &[0.0, 1.0], TreeParams::default()).unwrap();
        assert!(matches!(t.predict(&[0.0, 1.0]), Err(CartError::DimensionMismatch { .. })));
    }

    #[test]
    fn invalid_params() {
        let x = vec![vec![0.0], vec![1.0]];
        let p = TreeParams {
            min_samples_leaf: 0,
            ..TreeParams::default()
        };
        assert!(matches!(fit_tree(&x, &[0.0, 1.0], p), Err(CartError::InvalidParams(_))));
    }

    #[test]
    fn tie_prefers_lowest_feature() {
        // Both features separate the targets identically.
        let x = vec![vec![0.0, 0.0], vec![1.0, 1.0]];
        let t = fit_tree(&x, &[0.0, 1.0], TreeParams::default()).unwrap();
        assert!(matches!(t.nodes[0], Node::Internal { feature: 0, .. }));
    }

    #[test]
    fn min_samples_leaf_respected() {
        let x: Vec<Vec<f64>> = (0..20).map(|i| vec![i as f64]).collect();
        let y: Vec<f64> = (0..20).map(|i| (i * i) as f64).collect();
        let p = TreeParams {
            min_samples_leaf: 3,
            ..TreeParams::default()
        };
        let t = fit_tree(&x, &y, p).unwrap();
        for n in &t.nodes {
            if let Node::Leaf { n_samples, .. } = n {
                assert!(*n_samples >= 3);
            }
        }
    }

    #[test]
    fn depth_limit_respected() {
        let x: Vec<Vec<f64>> = (0..64).map(|i| vec![i as f64]).collect();
        let y: Vec<f64> = (0..64).map(|i| ((i * 37) % 11) as f64).collect();
        for d in 0..5 {
            let t = fit_tree(&x, &y, TreeParams::with_depth(Some(d))).unwrap();
            assert!(t.depth() <= d);
        }
    }

    #[test]
    fn impurity_decrease_prunes() {
        let x: Vec<Vec<f64>> = (0..10).map(|i| vec![i as f64]).collect();
        let y: Vec<f64> = (0..10).map(|i| if i < 5 { 0.0 } else { 0.1 }).collect();
        let p = TreeParams {
            min_impurity_decrease: 1.0,
            ..TreeParams::default()
        };
        assert_eq!(fit_tree(&x, &y, p).unwrap().nodes.len(), 1);
    }

    #[test]
    fn from_nodes_rejects_bad_links() {
        let nodes = vec![Node::Internal {
            feature: 0,
            threshold: 0.0,
            left: 5,
            right: 6,
        }];
        assert!(RegressionTree::from_nodes(1, TreeParams::default(), nodes).is_err());
    }

    #[test]
    fn json_round_trip_is_exact() {
        let x: Vec<Vec<f64>> = (0..30).map(|i| vec![(i as f64 * 0.37).sin(), i as f64 / 7.0]).collect();
        let y: Vec<f64> = (0..30).map(|i| (i as f64 * 1.3).cos() * 3.1).collect();
        let t = fit_tree(&x, &y, TreeParams::default()).unwrap();
        let back = RegressionTree::from_json(&t.to_json()).unwrap();
        assert_eq!(back, t);
    }
}
