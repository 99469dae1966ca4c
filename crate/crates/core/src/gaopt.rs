//! Real-coded genetic algorithm over the process input space.
//!
//! Each generation evaluates fitness in parallel, then draws parents by
//! roulette on `fitness - worst finite fitness`, recombines them with
//! BLX-0.5 crossover and applies Gaussian mutation (sd = 0.1 × gene range,
//! each gene with probability `1/d`) clipped to the bounds. The best
//! `elitism` individuals pass unchanged.
//! Infeasible individuals score `-∞` and are never selected.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::data::{check_features, Feature, FeatureVector, Target};
use crate::pipeline::TrainedTarget;
use crate::{Predict, SCHEMA_VERSION};

/// BLX-α expansion factor.
pub const BLX_ALPHA: f64 = 0.5;
/// Mutation deviation as a fraction of the gene range.
pub const MUTATION_SCALE: f64 = 0.1;
/// Default elite count as a fraction of the population.
pub const ELITE_FRACTION: f64 = 0.1;
/// Initialization gives up after this many draws per individual.
pub const INIT_DRAWS_PER_INDIVIDUAL: usize = 100;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GaError {
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("no feasible individual in {draws} draws")]
    InfeasibleBounds { draws: usize },
    #[error("no trained model for `{}`", .0.column())]
    MissingModel(Target),
    #[error("every direction is Ignore")]
    NoObjective,
    #[error("unknown application `{0}`")]
    UnknownApplication(String),
    #[error("profile: {0}")]
    Profile(String),
}

pub type Result<T, E = GaError> = std::result::Result<T, E>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Maximize,
    Minimize,
    Ignore,
}

impl Direction {
    pub fn sign(self) -> f64 {
        match self {
            Direction::Maximize => 1.0,
            Direction::Minimize => -1.0,
            Direction::Ignore => 0.0,
        }
    }
}

/// Per-target optimization directions for one hydrochar application.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ObjectiveProfile {
    pub application: String,
    pub directions: BTreeMap<Target, Direction>,
}

impl ObjectiveProfile {
    pub const BUILT_IN: [&'static str; 3] = ["energy", "soil", "adsorption"];

    fn from_lists(application: &str, maximize: &[Target], minimize: &[Target]) -> Self {
        let directions = Target::ALL
            .iter()
            .map(|&t| {
                let d = if maximize.contains(&t) {
                    Direction::Maximize
                } else if minimize.contains(&t) {
                    Direction::Minimize
                } else {
                    Direction::Ignore
                };
                (t, d)
            })
            .collect();
        Self {
            application: application.to_string(),
            directions,
        }
    }

    pub fn energy() -> Self {
        use Target::*;
        Self::from_lists(
            "energy",
            &[Carbon, Hydrogen, Hhv, Yield],
            &[Nitrogen, Oxygen, Sulfur, VolatileMatter, Ash],
        )
    }

    pub fn soil() -> Self {
        use Target::*;
        Self::from_lists("soil", &[Nitrogen, Sulfur, Ash, Yield], &[Hhv])
    }

    pub fn adsorption() -> Self {
        use Target::*;
        Self::from_lists("adsorption", &[Nitrogen, Oxygen, Sulfur, Ash, Yield], &[Hhv])
    }

    pub fn built_in(name: &str) -> Result<Self> {
        match name {
            "energy" => Ok(Self::energy()),
            "soil" => Ok(Self::soil()),
            "adsorption" => Ok(Self::adsorption()),
            other => Err(GaError::UnknownApplication(other.to_string())),
        }
    }

    /// Parses `{"hc_yield": "maximize", ...}`; unlisted targets are ignored.
    pub fn from_json(application: &str, s: &str) -> Result<Self> {
        let partial: BTreeMap<Target, Direction> =
            serde_json::from_str(s).map_err(|e| GaError::Profile(e.to_string()))?;
        let directions = Target::ALL
            .iter()
            .map(|&t| (t, partial.get(&t).copied().unwrap_or(Direction::Ignore)))
            .collect();
        let profile = Self {
            application: application.to_string(),
            directions,
        };
        profile.validate()?;
        Ok(profile)
    }

    pub fn direction(&self, target: Target) -> Direction {
        self.directions.get(&target).copied().unwrap_or(Direction::Ignore)
    }

    /// Non-ignored targets in canonical order.
    pub fn active(&self) -> Vec<(Target, Direction)> {
        Target::ALL
            .iter()
            .map(|&t| (t, self.direction(t)))
            .filter(|(_, d)| *d != Direction::Ignore)
            .collect()
    }

    pub fn validate(&self) -> Result<()> {
        if self.active().is_empty() {
            Err(GaError::NoObjective)
        } else {
            Ok(())
        }
    }
}

/// A surrogate for one target plus the training statistics that
/// standardize its prediction.
#[derive(Clone, Copy)]
pub struct Surrogate<'a> {
    pub target: Target,
    pub model: &'a dyn Predict,
    pub mean: f64,
    pub std: f64,
}

impl<'a> Surrogate<'a> {
    pub fn from_trained(t: &'a TrainedTarget) -> Self {
        Self {
            target: t.target,
            model: t,
            mean: t.target_stats.mean,
            std: t.target_stats.std,
        }
    }

    fn z(&self, x: &[f64]) -> f64 {
        let scale = if self.std > 0.0 { self.std } else { 1.0 };
        (self.model.predict_row(x) - self.mean) / scale
    }
}

/// Equal-weight signed sum of standardized predictions.
pub struct Fitness<'a> {
    terms: Vec<(f64, Surrogate<'a>)>,
}

impl<'a> Fitness<'a> {
    pub fn new(surrogates: &[Surrogate<'a>], profile: &ObjectiveProfile) -> Result<Self> {
        profile.validate()?;
        let terms = profile
            .active()
            .into_iter()
            .map(|(t, d)| {
                surrogates
                    .iter()
                    .find(|s| s.target == t)
                    .map(|s| (d.sign(), *s))
                    .ok_or(GaError::MissingModel(t))
            })
            .collect::<Result<_>>()?;
        Ok(Self { terms })
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        self.terms.iter().map(|(sign, s)| sign * s.z(x)).sum()
    }
}

/// One-shot fitness of `x`.
pub fn fitness(surrogates: &[Surrogate<'_>], profile: &ObjectiveProfile, x: &FeatureVector) -> Result<f64> {
    Ok(Fitness::new(surrogates, profile)?.eval(&x.to_array()))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GaConfig {
    pub population: usize,
    pub crossover_prob: f64,
    pub mutation_prob: f64,
    pub generations: usize,
    /// Stop after this many generations without a best-ever improvement.
    pub stagnation_limit: Option<usize>,
    pub bounds: Vec<(f64, f64)>,
    pub seed: u64,
    pub elitism: usize,
}

impl GaConfig {
    pub fn new(bounds: Vec<(f64, f64)>, seed: u64) -> Self {
        Self {
            population: 1000,
            crossover_prob: 0.5,
            mutation_prob: 0.3,
            generations: 200,
            stagnation_limit: Some(50),
            bounds,
            seed,
            elitism: 100,
        }
    }

    /// Sets the population and scales the elite count with it.
    pub fn with_population(mut self, population: usize) -> Self {
        self.population = population;
        self.elitism = (ELITE_FRACTION * population as f64).round() as usize;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(GaError::InvalidConfig(m.to_string()));
        if self.population < 2 {
            return bad("population must be at least 2");
        }
        if !(0.0..=1.0).contains(&self.crossover_prob) || !(0.0..=1.0).contains(&self.mutation_prob) {
            return bad("probabilities must lie in [0, 1]");
        }
        if self.elitism > self.population {
            return bad("elitism exceeds population");
        }
        if self.bounds.is_empty() {
            return bad("no genes");
        }
        if let Some((i, _)) = self
            .bounds
            .iter()
            .enumerate()
            .find(|(_, (lo, hi))| !(lo < hi && lo.is_finite() && hi.is_finite()))
        {
            return Err(GaError::InvalidConfig(format!("gene {i} needs finite lo < hi")));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GaRun {
    pub best: Vec<f64>,
    pub best_fitness: f64,
    /// Best-ever fitness after initialization and after each generation.
    pub history: Vec<f64>,
    pub generations_run: usize,
}

fn in_bounds(x: &[f64], bounds: &[(f64, f64)]) -> bool {
    x.iter().zip(bounds).all(|(v, (lo, hi))| v >= lo && v <= hi)
}

fn evaluate_population<F, C>(pop: &[Vec<f64>], objective: &F, feasible: &C) -> Vec<f64>
where
    F: Fn(&[f64]) -> f64 + Sync,
    C: Fn(&[f64]) -> bool + Sync,
{
    pop.par_iter()
        .map(|x| {
            if !feasible(x) {
                return f64::NEG_INFINITY;
            }
            let f = objective(x);
            if f.is_nan() {
                f64::NEG_INFINITY
            } else {
                f
            }
        })
        .collect()
}

/// Cumulative roulette weights `f - worst finite f`; `None` when no
/// individual has positive weight.
fn roulette_wheel(fit: &[f64]) -> Option<Vec<f64>> {
    let worst = fit.iter().copied().filter(|f| f.is_finite()).fold(f64::INFINITY, f64::min);
    if !worst.is_finite() {
        return None;
    }
    let mut acc = 0.0;
    let cumulative: Vec<f64> = fit
        .iter()
        .map(|&f| {
            if f.is_finite() {
                acc += f - worst;
            }
            acc
        })
        .collect();
    (acc > 0.0).then_some(cumulative)
}

fn spin(rng: &mut ChaCha8Rng, wheel: Option<&[f64]>, fit: &[f64]) -> usize {
    match wheel {
        Some(c) => {
            let r = rng.random::<f64>() * c[c.len() - 1];
            c.partition_point(|&v| v <= r).min(c.len() - 1)
        }
        None => {
            // Uniform among finite individuals; all exist by initialization.
            let finite: Vec<usize> = (0..fit.len()).filter(|&i| fit[i].is_finite()).collect();
            if finite.is_empty() {
                rng.random_range(0..fit.len())
            } else {
                finite[rng.random_range(0..finite.len())]
            }
        }
    }
}

fn argsort_desc(fit: &[f64]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..fit.len()).collect();
    order.sort_by(|&a, &b| fit[b].total_cmp(&fit[a]).then(a.cmp(&b)));
    order
}

/// Maximizes `objective` over the box `config.bounds`, treating points
/// rejected by `feasible` as `-∞`.
pub fn optimize<F, C>(objective: &F, feasible: &C, config: &GaConfig) -> Result<GaRun>
where
    F: Fn(&[f64]) -> f64 + Sync,
    C: Fn(&[f64]) -> bool + Sync,
{
    config.validate()?;
    let bounds = &config.bounds;
    let d = bounds.len();
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mutation: Vec<Normal<f64>> = bounds
        .iter()
        .map(|(lo, hi)| Normal::new(0.0, MUTATION_SCALE * (hi - lo)).expect("positive sd"))
        .collect();

    let gene_prob = 1.0 / d as f64;

    let max_draws = INIT_DRAWS_PER_INDIVIDUAL * config.population;
    let mut pop: Vec<Vec<f64>> = Vec::with_capacity(config.population);
    let mut draws = 0;
    while pop.len() < config.population && draws < max_draws {
        let x: Vec<f64> = bounds.iter().map(|&(lo, hi)| rng.random_range(lo..=hi)).collect();
        draws += 1;
        if feasible(&x) {
            pop.push(x);
        }
    }
    if pop.is_empty() {
        return Err(GaError::InfeasibleBounds { draws });
    }
    let found = pop.len();
    for i in found..config.population {
        pop.push(pop[i % found].clone());
    }

    let mut fit = evaluate_population(&pop, objective, feasible);
    let order = argsort_desc(&fit);
    let mut best = pop[order[0]].clone();
    let mut best_fitness = fit[order[0]];
    let mut history = vec![best_fitness];
    let mut stagnant = 0;
    let mut generations_run = 0;

    for _ in 0..config.generations {
        if config.stagnation_limit.is_some_and(|limit| stagnant >= limit) {
            break;
        }
        let order = argsort_desc(&fit);
        let mut next: Vec<Vec<f64>> = order[..config.elitism].iter().map(|&i| pop[i].clone()).collect();
        let wheel = roulette_wheel(&fit);

        while next.len() < config.population {
            let pa = &pop[spin(&mut rng, wheel.as_deref(), &fit)];
            let pb = &pop[spin(&mut rng, wheel.as_deref(), &fit)];
            let (mut ca, mut cb) = (pa.clone(), pb.clone());
            if rng.random::<f64>() < config.crossover_prob {
                for g in 0..d {
                    let (lo, hi) = (pa[g].min(pb[g]), pa[g].max(pb[g]));
                    let ext = BLX_ALPHA * (hi - lo);
                    let (a, b) = (lo - ext, hi + ext);
                    ca[g] = if b > a { rng.random_range(a..=b) } else { a };
                    cb[g] = if b > a { rng.random_range(a..=b) } else { a };
                }
            }
            for child in [&mut ca, &mut cb] {
                if rng.random::<f64>() < config.mutation_prob {
                    for (g, dist) in mutation.iter().enumerate() {
                        if rng.random::<f64>() < gene_prob {
                            child[g] += dist.sample(&mut rng);
                        }
                    }
                }
                for (v, &(lo, hi)) in child.iter_mut().zip(bounds) {
                    *v = v.clamp(lo, hi);
                }
            }
            next.push(ca);
            if next.len() < config.population {
                next.push(cb);
            }
        }
        debug_assert!(next.iter().all(|x| in_bounds(x, bounds)));

        pop = next;
        fit = evaluate_population(&pop, objective, feasible);
        let top = argsort_desc(&fit)[0];
        if fit[top] > best_fitness {
            best_fitness = fit[top];
            best = pop[top].clone();
            stagnant = 0;
        } else {
            stagnant += 1;
        }
        history.push(best_fitness);
        generations_run += 1;
    }
    debug_assert!(history.windows(2).all(|w| w[1] >= w[0]));

    Ok(GaRun {
        best,
        best_fitness,
        history,
        generations_run,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GaResult {
    pub application: String,
    pub best_inputs: FeatureVector,
    pub best_fitness: f64,
    pub predicted_outputs: BTreeMap<Target, f64>,
    pub history: Vec<f64>,
    pub generations_run: usize,
}

/// Optimizes trained surrogates for `profile`. Every model in `models`
/// contributes a predicted output; only active targets enter the fitness.
pub fn optimize_profile(models: &[TrainedTarget], profile: &ObjectiveProfile, config: &GaConfig) -> Result<GaResult> {
    if config.bounds.len() != Feature::COUNT {
        return Err(GaError::InvalidConfig(format!(
            "expected {} gene bounds, got {}",
            Feature::COUNT,
            config.bounds.len()
        )));
    }
    let surrogates: Vec<Surrogate<'_>> = models.iter().map(Surrogate::from_trained).collect();
    let fitness = Fitness::new(&surrogates, profile)?;
    let run = optimize(&|x: &[f64]| fitness.eval(x), &|x: &[f64]| check_features(x).is_ok(), config)?;
    let predicted_outputs = models.iter().map(|m| (m.target, m.predict(&run.best))).collect();
    Ok(GaResult {
        application: profile.application.clone(),
        best_inputs: FeatureVector::from_slice(&run.best),
        best_fitness: run.best_fitness,
        predicted_outputs,
        history: run.history,
        generations_run: run.generations_run,
    })
}

/// Optimum inputs and outputs with the settings that produced them.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OptimizationReport {
    pub schema_version: u32,
    pub tool_version: String,
    pub application: String,
    pub seed: u64,
    pub directions: BTreeMap<Target, Direction>,
    pub config: GaConfig,
    pub best_inputs: FeatureVector,
    pub predicted_outputs: BTreeMap<Target, f64>,
    pub best_fitness: f64,
    pub generations_run: usize,
    pub history: Vec<f64>,
}

pub fn report(result: &GaResult, profile: &ObjectiveProfile, config: &GaConfig) -> OptimizationReport {
    OptimizationReport {
        schema_version: SCHEMA_VERSION,
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        application: result.application.clone(),
        seed: config.seed,
        directions: profile.directions.clone(),
        config: config.clone(),
        best_inputs: result.best_inputs,
        predicted_outputs: result.predicted_outputs.clone(),
        best_fitness: result.best_fitness,
        generations_run: result.generations_run,
        history: result.history.clone(),
    }
}

impl OptimizationReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(s: &str) -> serde_json::Result<Self> {
        serde_json::from_str(s)
    }

    pub fn to_table(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "Optimum for {} (seed {})", self.application, self.seed);
        let _ = writeln!(s, "{:<16} {:>14}", "input", "value");
        for f in Feature::ALL {
            let _ = writeln!(s, "{:<16} {:>14.4}", f.column(), self.best_inputs.get(f));
        }
        let _ = writeln!(s, "{:<16} {:>14} {:>10}", "output", "predicted", "direction");
        for (t, v) in &self.predicted_outputs {
            let dir = match self.directions.get(t).copied().unwrap_or(Direction::Ignore) {
                Direction::Maximize => "max",
                Direction::Minimize => "min",
                Direction::Ignore => "-",
            };
            let _ = writeln!(s, "{:<16} {:>14.4} {:>10}", t.column(), v, dir);
        }
        let _ = writeln!(s, "fitness {:.6} after {} generations", self.best_fitness, self.generations_run);
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    struct Constant(f64);

    impl Predict for Constant {
        fn n_features(&self) -> usize {
            Feature::COUNT
        }
        fn predict_row(&self, _: &[f64]) -> f64 {
            self.0
        }
    }

    struct FirstGene;

    impl Predict for FirstGene {
        fn n_features(&self) -> usize {
            Feature::COUNT
        }
        fn predict_row(&self, x: &[f64]) -> f64 {
            x[0]
        }
    }

    #[test]
    fn built_in_profiles_match_table() {
        use Direction::*;
        use Target::*;
        let e = ObjectiveProfile::energy();
        for t in [Carbon, Hydrogen, Hhv, Yield] {
            assert_eq!(e.direction(t), Maximize);
        }
        for t in [Nitrogen, Oxygen, Sulfur, VolatileMatter, Ash] {
            assert_eq!(e.direction(t), Minimize);
        }
        assert_eq!(e.direction(FixedCarbon), Ignore);

        let s = ObjectiveProfile::soil();
        assert_eq!(s.active().len(), 5);
        assert_eq!(s.direction(Hhv), Minimize);
        assert_eq!(s.direction(Oxygen), Ignore);

        let a = ObjectiveProfile::adsorption();
        assert_eq!(a.active().len(), 6);
        assert_eq!(a.direction(Oxygen), Maximize);
        assert_ne!(s.directions, a.directions);
    }

    #[test]
    fn profile_json() {
        let p = ObjectiveProfile::from_json("custom", r#"{"hc_yield":"maximize","hc_ash":"minimize"}"#).unwrap();
        assert_eq!(p.active(), vec![(Target::Yield, Direction::Maximize), (Target::Ash, Direction::Minimize)]);
        assert_eq!(
            ObjectiveProfile::from_json("none", r#"{"hc_yield":"ignore"}"#),
            Err(GaError::NoObjective)
        );
        assert!(ObjectiveProfile::built_in("fuel").is_err());
    }

    #[test]
    fn constant_models_give_hand_computed_fitness() {
        let (a, b) = (Constant(10.0), Constant(3.0));
        let surrogates = [
            Surrogate {
                target: Target::Yield,
                model: &a,
                mean: 6.0,
                std: 2.0,
            },
            Surrogate {
                target: Target::Hhv,
                model: &b,
                mean: 1.0,
                std: 4.0,
            },
        ];
        let p = ObjectiveProfile::from_json("t", r#"{"hc_yield":"maximize","hc_hhv":"minimize"}"#).unwrap();
        let x = FeatureVector::from_array([0.0; Feature::COUNT]);
        // (10-6)/2 - (3-1)/4
        assert_eq!(fitness(&surrogates, &p, &x).unwrap(), 1.5);
    }

    #[test]
    fn missing_model_and_no_objective() {
        let a = Constant(1.0);
        let s = [Surrogate {
            target: Target::Yield,
            model: &a,
            mean: 0.0,
            std: 1.0,
        }];
        let x = FeatureVector::from_array([0.0; Feature::COUNT]);
        assert_eq!(
            fitness(&s, &ObjectiveProfile::soil(), &x),
            Err(GaError::MissingModel(Target::Hhv))
        );
        let empty = ObjectiveProfile {
            application: "none".into(),
            directions: BTreeMap::new(),
        };
        assert_eq!(fitness(&s, &empty, &x), Err(GaError::NoObjective));
    }

    #[test]
    fn maximize_is_monotone() {
        let m = FirstGene;
        let s = [Surrogate {
            target: Target::Yield,
            model: &m,
            mean: 0.0,
            std: 3.0,
        }];
        let p = ObjectiveProfile::from_json("t", r#"{"hc_yield":"maximize"}"#).unwrap();
        let mut lo = [0.0; Feature::COUNT];
        let mut hi = [0.0; Feature::COUNT];
        lo[0] = 1.0;
        hi[0] = 2.0;
        let f_lo = fitness(&s, &p, &FeatureVector::from_array(lo)).unwrap();
        let f_hi = fitness(&s, &p, &FeatureVector::from_array(hi)).unwrap();
        assert!(f_hi > f_lo);
    }

    fn sphere_config(seed: u64, generations: usize) -> GaConfig {
        GaConfig {
            generations,
            stagnation_limit: None,
            ..GaConfig::new(vec![(-5.0, 5.0), (0.0, 10.0), (100.0, 300.0)], seed).with_population(100)
        }
    }

    #[test]
    fn zero_generations_returns_initial_best() {
        let c = [1.0, 2.0, 150.0];
        let f = |x: &[f64]| -x.iter().zip(&c).map(|(a, b)| (a - b).powi(2)).sum::<f64>();
        let cfg = sphere_config(4, 0);
        let run = optimize(&f, &|_: &[f64]| true, &cfg).unwrap();
        assert_eq!(run.history.len(), 1);
        assert_eq!(run.generations_run, 0);
        assert!(in_bounds(&run.best, &cfg.bounds));
    }

    #[test]
    fn sphere_converges_and_is_deterministic() {
        let c = [1.0, 2.0, 150.0];
        let f = |x: &[f64]| {
            -x.iter()
                .zip(&c)
                .zip([10.0, 10.0, 200.0])
                .map(|((a, b), r)| ((a - b) / r).powi(2))
                .sum::<f64>()
        };
        let cfg = sphere_config(7, 200);
        let run = optimize(&f, &|_: &[f64]| true, &cfg).unwrap();
        assert!(run.history.windows(2).all(|w| w[1] >= w[0]));
        for ((v, t), (lo, hi)) in run.best.iter().zip(&c).zip(&cfg.bounds) {
            assert!(((v - t) / (hi - lo)).abs() < 1e-2, "{:?}", run.best);
        }
        assert_eq!(run, optimize(&f, &|_: &[f64]| true, &cfg).unwrap());
    }

    #[test]
    fn infeasible_bounds() {
        let cfg = sphere_config(1, 5).with_population(4);
        let err = optimize(&|_: &[f64]| 0.0, &|_: &[f64]| false, &cfg).unwrap_err();
        assert_eq!(err, GaError::InfeasibleBounds { draws: 400 });
    }

    #[test]
    fn config_validation() {
        let mut cfg = sphere_config(1, 5);
        cfg.bounds[1] = (3.0, 3.0);
        assert!(cfg.validate().is_err());
        let mut cfg = sphere_config(1, 5);
        cfg.population = 1;
        assert!(cfg.validate().is_err());
        let mut cfg = sphere_config(1, 5);
        cfg.mutation_prob = 1.5;
        assert!(cfg.validate().is_err());
    }
}
