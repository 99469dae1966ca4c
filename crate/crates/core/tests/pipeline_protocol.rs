use std::collections::BTreeSet;

use hydrochar::cart::TreeParams;
use hydrochar::data::{generate_synthetic, Dataset, Row, Target};
use hydrochar::pipeline::{
    evaluate, grid_search_folds, shared_split, train_all, Candidate, HyperGrid, ModelKind, TrainedModel,
};
use hydrochar::svr::SvrParams;

fn dtr_only_grid() -> HyperGrid {
    HyperGrid {
        tree_grid: HyperGrid::default().tree_grid,
        svr_grid: vec![SvrParams::default()],
    }
}

#[test]
fn noiseless_synthetic_trees_reach_high_test_r2() {
    let ds = generate_synthetic(500, 42, 0.0).unwrap();
    let out = train_all(&ds, &dtr_only_grid(), 42, &[ModelKind::Dtr]).unwrap();
    assert!(out.report.skipped.is_empty(), "{:?}", out.report.skipped);
    for t in Target::ALL {
        let e = out.report.entry(ModelKind::Dtr, t).unwrap();
        assert!(e.test.r2 >= 0.95, "{}: test R² {}", t.column(), e.test.r2);
    }
}

#[test]
fn report_is_reproducible_and_audited() {
    let ds = generate_synthetic(150, 7, 0.5).unwrap();
    let grid = HyperGrid {
        tree_grid: vec![TreeParams::with_depth(Some(3)), TreeParams::with_depth(Some(6))],
        svr_grid: vec![SvrParams::default()],
    };
    let kinds = [ModelKind::Dtr, ModelKind::Svr];
    let a = train_all(&ds, &grid, 9, &kinds).unwrap();
    let b = train_all(&ds, &grid, 9, &kinds).unwrap();
    assert_eq!(a.report.to_json(), b.report.to_json());
    assert_eq!(a.models.len(), 20);

    for m in &a.models {
        // cv_rmse is the mean of k fold scores.
        assert_eq!(m.fold_rmses.len(), 5);
        let mean = m.fold_rmses.iter().sum::<f64>() / 5.0;
        assert!((m.cv_rmse - mean).abs() < 1e-12);

        // Input scaler holds training-row statistics only.
        let (rows, y) = ds.present_rows(&a.plan.train_indices, m.target);
        let x = ds.feature_matrix(&rows);
        for j in 0..x[0].len() {
            let col_mean = x.iter().map(|r| r[j]).sum::<f64>() / x.len() as f64;
            assert!((m.scaler_in.means[j] - col_mean).abs() < 1e-9);
        }

        // Training metrics reproduce through the public evaluator.
        let again = evaluate(m, &x, &y).unwrap();
        assert_eq!(again, m.train_metrics);
        match (&m.model, &m.scaler_out) {
            (TrainedModel::Dtr(_), None) | (TrainedModel::Svr(_), Some(_)) => {}
            other => panic!("unexpected scaling {:?}", other.1),
        }
    }
}

#[test]
fn shared_split_gives_common_test_rows() {
    let mut ds = generate_synthetic(120, 3, 0.2).unwrap();
    // Knock out different targets on different rows.
    let mut rows: Vec<Row> = ds.rows().to_vec();
    for (i, r) in rows.iter_mut().enumerate() {
        if i % 3 == 0 {
            r.targets.set(Target::Hhv, None);
        }
        if i % 4 == 1 {
            r.targets.set(Target::Sulfur, None);
        }
    }
    ds = Dataset::new(rows).unwrap();
    let plan = shared_split(&ds, 5).unwrap();
    let test: BTreeSet<usize> = plan.test_indices.iter().copied().collect();
    let (hhv_rows, _) = ds.present_rows(&(0..ds.len()).collect::<Vec<_>>(), Target::Hhv);
    let (s_rows, _) = ds.present_rows(&(0..ds.len()).collect::<Vec<_>>(), Target::Sulfur);
    let hhv_test: BTreeSet<usize> = hhv_rows.iter().filter(|r| test.contains(r)).copied().collect();
    let s_test: BTreeSet<usize> = s_rows.iter().filter(|r| test.contains(r)).copied().collect();
    let both: BTreeSet<usize> = hhv_rows.iter().filter(|r| s_rows.contains(r)).copied().collect();
    let lhs: BTreeSet<usize> = hhv_test.intersection(&both).copied().collect();
    let rhs: BTreeSet<usize> = s_test.intersection(&both).copied().collect();
    assert_eq!(lhs, rhs);
}

#[test]
fn absent_target_is_skipped_without_aborting() {
    let ds = generate_synthetic(100, 1, 0.1).unwrap();
    let rows: Vec<Row> = ds
        .rows()
        .iter()
        .map(|r| {
            let mut r = *r;
            r.targets.set(Target::Nitrogen, None);
            r
        })
        .collect();
    let ds = Dataset::new(rows).unwrap();
    let grid = HyperGrid {
        tree_grid: vec![TreeParams::with_depth(Some(4))],
        svr_grid: vec![SvrParams::default()],
    };
    let out = train_all(&ds, &grid, 1, &[ModelKind::Dtr]).unwrap();
    assert_eq!(out.report.skipped.len(), 1);
    assert_eq!(out.report.skipped[0].target, Target::Nitrogen);
    assert!(out.report.skipped[0].reason.contains("too few rows"));
    assert_eq!(out.models.len(), 9);
}

#[test]
fn noisy_data_prefers_a_depth_limited_tree() {
    let ds = generate_synthetic(500, 11, 8.0).unwrap();
    let plan = shared_split(&ds, 11).unwrap();
    let (rows, y) = ds.present_rows(&plan.train_indices, Target::Yield);
    let x = ds.feature_matrix(&rows);
    let folds: Vec<usize> = rows.iter().map(|&r| plan.fold_of(r).unwrap()).collect();
    let candidates: Vec<Candidate> = HyperGrid::default()
        .tree_grid
        .into_iter()
        .filter(|p| p.min_samples_leaf == 1)
        .map(Candidate::Dtr)
        .collect();
    let r = grid_search_folds(&x, &y, &folds, 5, &candidates).unwrap();
    let unlimited = candidates
        .iter()
        .position(|c| matches!(c, Candidate::Dtr(p) if p.max_depth.is_none()))
        .unwrap();
    match r.chosen {
        Candidate::Dtr(p) => assert!(p.max_depth.is_some()),
        _ => unreachable!(),
    }
    assert!(r.cv_rmse < r.candidate_cv_rmse[unlimited]);
    assert!(r.candidate_cv_rmse.iter().all(|&s| r.cv_rmse <= s));
}
