use hydrochar::cart::{fit_tree, Node, RegressionTree, TreeParams};
use hydrochar::Predict;
use proptest::prelude::*;

fn dataset() -> impl Strategy<Value = (Vec<Vec<f64>>, Vec<f64>)> {
    (5usize..60, 1usize..5).prop_flat_map(|(n, d)| {
        (
            prop::collection::vec(prop::collection::vec(-10.0f64..10.0, d), n),
            prop::collection::vec(-50.0f64..50.0, n),
        )
    })
}

fn sse(tree: &RegressionTree, x: &[Vec<f64>], y: &[f64]) -> f64 {
    x.iter().zip(y).map(|(r, v)| (tree.predict_row(r) - v).powi(2)).sum()
}

/// Thresholds on the path `x` takes, per feature, as (lower, upper) open bounds.
fn routed_box(tree: &RegressionTree, x: &[f64]) -> Vec<(f64, f64)> {
    let mut bounds = vec![(f64::NEG_INFINITY, f64::INFINITY); x.len()];
    let mut i = 0;
    while let Node::Internal { feature, threshold, left, right } = tree.nodes[i] {
        if x[feature] <= threshold {
            bounds[feature].1 = bounds[feature].1.min(threshold);
            i = left;
        } else {
            bounds[feature].0 = bounds[feature].0.max(threshold);
            i = right;
        }
    }
    bounds
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn deeper_trees_never_raise_training_sse((x, y) in dataset()) {
        let mut prev = f64::INFINITY;
        for depth in [Some(0), Some(1), Some(2), Some(3), Some(5), None] {
            let tree = fit_tree(&x, &y, TreeParams::with_depth(depth)).unwrap();
            let s = sse(&tree, &x, &y);
            prop_assert!(s <= prev + 1e-9 * prev.abs().max(1.0), "depth {depth:?}: {s} > {prev}");
            prev = s;
        }
    }

    #[test]
    fn leaf_means_replay_the_target_sum((x, y) in dataset(), depth in 0usize..6) {
        let tree = fit_tree(&x, &y, TreeParams::with_depth(Some(depth))).unwrap();
        let replay: f64 = tree
            .nodes
            .iter()
            .map(|n| match n {
                Node::Leaf { value, n_samples } => value * *n_samples as f64,
                Node::Internal { .. } => 0.0,
            })
            .sum();
        let total: f64 = y.iter().sum();
        prop_assert!((replay - total).abs() <= 1e-9 * total.abs().max(1.0));
    }

    #[test]
    fn prediction_is_constant_inside_the_routed_box(
        (x, y) in dataset(),
        probe_seed in prop::collection::vec(0.0f64..1.0, 5),
    ) {
        let tree = fit_tree(&x, &y, TreeParams::default()).unwrap();
        let base = &x[0];
        let pred = tree.predict_row(base);
        let bounds = routed_box(&tree, base);
        for (j, &(lo, hi)) in bounds.iter().enumerate() {
            // Move feature j anywhere inside (lo, hi], clamped to a finite window.
            let lo = lo.max(base[j] - 100.0);
            let hi = hi.min(base[j] + 100.0);
            let mut moved = base.clone();
            moved[j] = lo + (hi - lo) * probe_seed[j % probe_seed.len()];
            if moved[j] > lo && moved[j] <= hi {
                prop_assert_eq!(tree.predict_row(&moved).to_bits(), pred.to_bits());
            }
        }
    }

    #[test]
    fn refits_are_identical((x, y) in dataset(), depth in prop::option::of(0usize..8)) {
        let a = fit_tree(&x, &y, TreeParams::with_depth(depth)).unwrap();
        let b = fit_tree(&x, &y, TreeParams::with_depth(depth)).unwrap();
        prop_assert_eq!(a, b);
    }
}
