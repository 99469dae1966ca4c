use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{DataError, Result};

/// Shared train/test partition plus k-fold assignment of the training rows.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitPlan {
    /// Ascending row indices.
    pub train_indices: Vec<usize>,
    /// Ascending row indices.
    pub test_indices: Vec<usize>,
    /// `fold_assignments[i]` is the fold of `train_indices[i]`.
    pub fold_assignments: Vec<usize>,
    pub k: usize,
}

impl SplitPlan {
    pub fn fold_of(&self, row: usize) -> Option<usize> {
        self.train_indices
            .binary_search(&row)
            .ok()
            .map(|pos| self.fold_assignments[pos])
    }
}

/// Shuffles `0..n` with a seeded stream, takes the first `round(test_fraction * n)`
/// as test rows and deals the remainder into `k` folds round-robin.
pub fn split(n: usize, test_fraction: f64, k: usize, seed: u64) -> Result<SplitPlan> {
    if !(test_fraction > 0.0 && test_fraction < 1.0) {
        return Err(DataError::InvalidArgument(format!(
            "test_fraction {test_fraction} outside (0, 1)"
        )));
    }
    if k < 2 {
        return Err(DataError::InvalidArgument(format!("k = {k} must be at least 2")));
    }
    if n < k + 1 {
        return Err(DataError::TooFewRows { needed: k + 1, have: n });
    }
    let n_test = (test_fraction * n as f64).round() as usize;
    if n - n_test < k {
        return Err(DataError::TooFewRows {
            needed: k + n_test,
            have: n,
        });
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));

    let mut test_indices = order[..n_test].to_vec();
    test_indices.sort_unstable();
    let mut train: Vec<(usize, usize)> = order[n_test..]
        .iter()
        .enumerate()
        .map(|(pos, &row)| (row, pos % k))
        .collect();
    train.sort_unstable();
    let (train_indices, fold_assignments) = train.into_iter().unzip();

    Ok(SplitPlan {
        train_indices,
        test_indices,
        fold_assignments,
        k,
    })
}

/// Fold ids for `n` rows: seeded shuffle then round-robin dealing.
pub fn kfold_assignments(n: usize, k: usize, seed: u64) -> Result<Vec<usize>> {
    if k < 2 {
        return Err(DataError::InvalidArgument(format!("k = {k} must be at least 2")));
    }
    if n < k {
        return Err(DataError::TooFewRows { needed: k, have: n });
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    let mut folds = vec![0; n];
    for (pos, row) in order.into_iter().enumerate() {
        folds[row] = pos % k;
    }
    Ok(folds)
}

/// Up to `k` distinct entries of `pool`, drawn with a seeded shuffle and
/// returned in ascending order.
pub fn sample_indices(pool: &[usize], k: usize, seed: u64) -> Vec<usize> {
    let mut order = pool.to_vec();
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    order.truncate(k);
    order.sort_unstable();
    order
}
