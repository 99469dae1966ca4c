use hydrochar::cart::TreeParams;
use hydrochar::data::{generate_synthetic, Dataset, FeatureVector, Row, Target};
use hydrochar::gaopt::{fitness, optimize, GaConfig, ObjectiveProfile, Surrogate};
use hydrochar::pipeline::{train_all, HyperGrid, ModelKind, TrainedTarget};
use hydrochar::svr::SvrParams;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn tree_models(ds: &Dataset) -> Vec<TrainedTarget> {
    let grid = HyperGrid {
        tree_grid: vec![TreeParams::with_depth(Some(4)), TreeParams::with_depth(Some(8))],
        svr_grid: vec![SvrParams::default()],
    };
    train_all(ds, &grid, 13, &[ModelKind::Dtr]).unwrap().models
}

#[test]
fn rescaling_a_target_leaves_fitness_unchanged() {
    let ds = generate_synthetic(150, 4, 0.5).unwrap();
    let profile = ObjectiveProfile::built_in("soil").unwrap();
    let base = tree_models(&ds);
    let base_s: Vec<Surrogate> = base.iter().map(Surrogate::from_trained).collect();

    for factor in [0.5, 0.37] {
        let rows: Vec<Row> = ds
            .rows()
            .iter()
            .map(|r| {
                let mut r = *r;
                r.targets.set(Target::Hhv, r.targets.get(Target::Hhv).map(|v| v * factor));
                r
            })
            .collect();
        let scaled = tree_models(&Dataset::new(rows).unwrap());
        let scaled_s: Vec<Surrogate> = scaled.iter().map(Surrogate::from_trained).collect();

        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..50 {
            let pick = rng.random_range(0..ds.len());
            let x: FeatureVector = ds.rows()[pick].features;
            let a = fitness(&base_s, &profile, &x).unwrap();
            let b = fitness(&scaled_s, &profile, &x).unwrap();
            assert!((a - b).abs() <= 1e-9, "factor {factor}: {a} vs {b}");
        }
    }
}

fn bounds() -> impl Strategy<Value = Vec<(f64, f64)>> {
    prop::collection::vec((-100.0f64..100.0, 0.01f64..50.0), 1..6)
        .prop_map(|v| v.into_iter().map(|(lo, w)| (lo, lo + w)).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn runs_stay_in_bounds_and_are_monotone(b in bounds(), seed in 0u64..1000, target in 0.0f64..1.0) {
        let centre: Vec<f64> = b.iter().map(|(lo, hi)| lo + (hi - lo) * target).collect();
        let f = |x: &[f64]| -x.iter().zip(&centre).map(|(v, c)| (v - c).abs()).sum::<f64>();
        let config = GaConfig { generations: 20, ..GaConfig::new(b.clone(), seed).with_population(30) };
        let run = optimize(&f, &|_: &[f64]| true, &config).unwrap();
        for (v, (lo, hi)) in run.best.iter().zip(&b) {
            prop_assert!(v >= lo && v <= hi);
        }
        prop_assert!(run.history.windows(2).all(|w| w[1] >= w[0]));
        prop_assert_eq!(run.best_fitness, *run.history.last().unwrap());
        let again = optimize(&f, &|_: &[f64]| true, &config).unwrap();
        prop_assert_eq!(run, again);
    }
}
