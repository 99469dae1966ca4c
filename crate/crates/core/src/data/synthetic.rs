//! Synthetic HTC rows for tests and demos.
//!
//! Inputs are drawn uniformly inside the envelope below (rejection sampling
//! keeps the ultimate and proximate sums physical; fixed carbon closes the
//! proximate balance). Each response is a smooth function of one or two
//! normalized inputs `u = (x - lo) / (hi - lo)`:
//!
//! | response | ground truth |
//! |----------|--------------|
//! | yield    | 40 + 50 / (1 + exp(6 (u_T - 0.5))) + 8 u_ash |
//! | HHV      | 12 + 18 u_C + 5 u_T |
//! | VM       | 80 - 40 u_T - 10 u_ash |
//! | FC       | 10 + 30 u_T + 10 u_C |
//! | ash      | 2 + 60 u_ash + 5 u_T |
//! | C        | 30 + 25 u_C + 15 u_T |
//! | H        | 3 + 3 u_H - u_T |
//! | N        | 0.2 + 4 u_N + 0.5 u_T |
//! | S        | 0.05 + 0.9 u_S + 0.1 u_T |
//! | O        | 45 - 25 u_T + 10 u_O |
//!
//! Yield falls with temperature and HHV rises with biomass carbon. Gaussian
//! noise is added afterwards and the result clipped to the admissible range.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use super::{DataError, Dataset, Feature, FeatureVector, Result, Row, Target, TargetRecord};

/// Sampling range per feature. Fixed carbon is derived, so its entry only
/// documents the attainable range.
pub const SYNTHETIC_ENVELOPE: [(f64, f64); Feature::COUNT] = [
    (22.65, 63.82), // biomass_c
    (2.9, 8.1),     // biomass_h
    (0.1, 5.0),     // biomass_n
    (0.0, 1.0),     // biomass_s
    (10.5, 60.5),   // biomass_o
    (47.38, 93.42), // biomass_vm
    (0.0, 52.46),   // biomass_fc
    (0.16, 49.85),  // biomass_ash
    (100.0, 375.0), // temperature_c
    (5.0, 600.0),   // time_min
    (40.0, 95.0),   // water_wt
];

fn unit(x: &FeatureVector, f: Feature) -> f64 {
    let (lo, hi) = SYNTHETIC_ENVELOPE[f.index()];
    (x.get(f) - lo) / (hi - lo)
}

/// Noise-free response surface used by [`generate_synthetic`].
pub fn ground_truth(x: &FeatureVector) -> [f64; Target::COUNT] {
    let t = unit(x, Feature::Temperature);
    let c = unit(x, Feature::BiomassC);
    let h = unit(x, Feature::BiomassH);
    let n = unit(x, Feature::BiomassN);
    let s = unit(x, Feature::BiomassS);
    let o = unit(x, Feature::BiomassO);
    let ash = unit(x, Feature::BiomassAsh);
    [
        40.0 + 50.0 / (1.0 + (6.0 * (t - 0.5)).exp()) + 8.0 * ash,
        12.0 + 18.0 * c + 5.0 * t,
        80.0 - 40.0 * t - 10.0 * ash,
        10.0 + 30.0 * t + 10.0 * c,
        2.0 + 60.0 * ash + 5.0 * t,
        30.0 + 25.0 * c + 15.0 * t,
        3.0 + 3.0 * h - t,
        0.2 + 4.0 * n + 0.5 * t,
        0.05 + 0.9 * s + 0.1 * t,
        45.0 - 25.0 * t + 10.0 * o,
    ]
}

fn sample_features(rng: &mut ChaCha8Rng) -> FeatureVector {
    loop {
        let mut v = [0.0; Feature::COUNT];
        for f in Feature::ALL {
            if f == Feature::BiomassFc {
                continue;
            }
            let (lo, hi) = SYNTHETIC_ENVELOPE[f.index()];
            v[f.index()] = rng.random_range(lo..hi);
        }
        let ultimate: f64 = v[..5].iter().sum();
        let fc = 100.0 - v[Feature::BiomassVm.index()] - v[Feature::BiomassAsh.index()];
        if ultimate <= 100.0 && fc >= 0.0 {
            v[Feature::BiomassFc.index()] = fc;
            return FeatureVector::from_array(v);
        }
    }
}

fn clip(target: Target, v: f64) -> f64 {
    match target {
        Target::Yield => v.clamp(0.01, 100.0),
        Target::Hhv => v.clamp(0.01, 50.0),
        _ => v.clamp(0.0, 100.0),
    }
}

pub fn generate_synthetic(n: usize, seed: u64, noise_sd: f64) -> Result<Dataset> {
    if n == 0 {
        return Err(DataError::InvalidArgument("n must be at least 1".into()));
    }
    if !(noise_sd >= 0.0 && noise_sd.is_finite()) {
        return Err(DataError::InvalidArgument(format!("noise_sd {noise_sd} must be >= 0")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let noise = Normal::new(0.0, noise_sd).expect("valid normal");
    let rows = (0..n)
        .map(|_| {
            let features = sample_features(&mut rng);
            let truth = ground_truth(&features);
            let mut targets = TargetRecord::default();
            for t in Target::ALL {
                let eps = if noise_sd > 0.0 { noise.sample(&mut rng) } else { 0.0 };
                targets.set(t, Some(clip(t, truth[t.index()] + eps)));
            }
            Row { features, targets }
        })
        .collect();
    Dataset::new(rows)
}
