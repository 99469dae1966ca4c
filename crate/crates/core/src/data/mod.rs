//! HTC dataset schema, CSV ingestion, splitting, scaling and synthetic data.
//!
//! A row pairs the eleven independent variables (biomass ultimate and
//! proximate analysis plus the three processing parameters) with the ten
//! hydrochar responses. Responses are optional because literature-mined rows
//! rarely report all of them.

mod chemistry;
mod csv_io;
mod scaler;
mod split;
mod synthetic;

pub use chemistry::{van_krevelen, AtomicRatios};
pub use csv_io::{load_csv, read_csv, write_csv, write_csv_to, LoadedDataset, RangeWarning};
pub use scaler::{fit_scaler, Scaler};
pub use split::{kfold_assignments, sample_indices, split, SplitPlan};
pub use synthetic::{generate_synthetic, ground_truth, SYNTHETIC_ENVELOPE};

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Slack allowed on the ultimate and proximate sums (wt%).
pub const SUM_TOLERANCE: f64 = 1.0;

/// Envelope of processing conditions observed in the literature corpus.
/// Rows outside it load but raise a [`RangeWarning`].
pub const TEMPERATURE_ENVELOPE: (f64, f64) = (100.0, 375.0);
pub const TIME_ENVELOPE: (f64, f64) = (5.0, 600.0);

#[derive(Debug, Error)]
pub enum DataError {
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
    #[error("missing column `{0}`")]
    MissingColumn(String),
    #[error("unexpected column `{0}`")]
    UnexpectedColumn(String),
    #[error("unparseable cell at row {row}, column `{col}`")]
    UnparseableCell { row: usize, col: String },
    #[error("dataset has no data rows")]
    EmptyDataset,
    #[error("row {row} violates constraint: {rule}")]
    ConstraintViolation { row: usize, rule: String },
    #[error("column `{0}` is constant and cannot be standardized")]
    ConstantColumn(String),
    #[error("too few rows: need at least {needed}, have {have}")]
    TooFewRows { needed: usize, have: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("carbon content must be positive for atomic ratios")]
    ZeroCarbon,
}

pub type Result<T, E = DataError> = std::result::Result<T, E>;

/// The eleven independent variables, in canonical column order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Feature {
    #[serde(rename = "biomass_c")]
    BiomassC,
    #[serde(rename = "biomass_h")]
    BiomassH,
    #[serde(rename = "biomass_n")]
    BiomassN,
    #[serde(rename = "biomass_s")]
    BiomassS,
    #[serde(rename = "biomass_o")]
    BiomassO,
    #[serde(rename = "biomass_vm")]
    BiomassVm,
    #[serde(rename = "biomass_fc")]
    BiomassFc,
    #[serde(rename = "biomass_ash")]
    BiomassAsh,
    #[serde(rename = "temperature_c")]
    Temperature,
    #[serde(rename = "time_min")]
    Time,
    #[serde(rename = "water_wt")]
    WaterContent,
}

impl Feature {
    pub const COUNT: usize = 11;

    pub const ALL: [Feature; Self::COUNT] = [
        Feature::BiomassC,
        Feature::BiomassH,
        Feature::BiomassN,
        Feature::BiomassS,
        Feature::BiomassO,
        Feature::BiomassVm,
        Feature::BiomassFc,
        Feature::BiomassAsh,
        Feature::Temperature,
        Feature::Time,
        Feature::WaterContent,
    ];

    pub fn column(self) -> &'static str {
        match self {
            Feature::BiomassC => "biomass_c",
            Feature::BiomassH => "biomass_h",
            Feature::BiomassN => "biomass_n",
            Feature::BiomassS => "biomass_s",
            Feature::BiomassO => "biomass_o",
            Feature::BiomassVm => "biomass_vm",
            Feature::BiomassFc => "biomass_fc",
            Feature::BiomassAsh => "biomass_ash",
            Feature::Temperature => "temperature_c",
            Feature::Time => "time_min",
            Feature::WaterContent => "water_wt",
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_column(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|f| f.column() == name)
    }

    /// True for the mass-fraction columns bounded to [0, 100].
    pub fn is_mass_fraction(self) -> bool {
        !matches!(self, Feature::Temperature | Feature::Time)
    }
}

/// The ten hydrochar responses, in canonical column order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Target {
    #[serde(rename = "hc_yield")]
    Yield,
    #[serde(rename = "hc_hhv")]
    Hhv,
    #[serde(rename = "hc_vm")]
    VolatileMatter,
    #[serde(rename = "hc_fc")]
    FixedCarbon,
    #[serde(rename = "hc_ash")]
    Ash,
    #[serde(rename = "hc_c")]
    Carbon,
    #[serde(rename = "hc_h")]
    Hydrogen,
    #[serde(rename = "hc_n")]
    Nitrogen,
    #[serde(rename = "hc_s")]
    Sulfur,
    #[serde(rename = "hc_o")]
    Oxygen,
}

impl Target {
    pub const COUNT: usize = 10;

    pub const ALL: [Target; Self::COUNT] = [
        Target::Yield,
        Target::Hhv,
        Target::VolatileMatter,
        Target::FixedCarbon,
        Target::Ash,
        Target::Carbon,
        Target::Hydrogen,
        Target::Nitrogen,
        Target::Sulfur,
        Target::Oxygen,
    ];

    pub fn column(self) -> &'static str {
        match self {
            Target::Yield => "hc_yield",
            Target::Hhv => "hc_hhv",
            Target::VolatileMatter => "hc_vm",
            Target::FixedCarbon => "hc_fc",
            Target::Ash => "hc_ash",
            Target::Carbon => "hc_c",
            Target::Hydrogen => "hc_h",
            Target::Nitrogen => "hc_n",
            Target::Sulfur => "hc_s",
            Target::Oxygen => "hc_o",
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_column(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|t| t.column() == name)
    }

    /// Admissible value range as (lower, upper, lower_inclusive).
    fn valid_range(self) -> (f64, f64, bool) {
        match self {
            Target::Yield => (0.0, 100.0, false),
            Target::Hhv => (0.0, 50.0, false),
            _ => (0.0, 100.0, true),
        }
    }
}

impl std::fmt::Display for Feature {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.column())
    }
}

impl std::fmt::Display for Target {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.column())
    }
}

/// Any of the 21 dataset columns.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Variable {
    Feature(Feature),
    Target(Target),
}

impl Variable {
    /// All 21 columns: inputs first, then responses.
    pub fn all() -> Vec<Variable> {
        Feature::ALL
            .into_iter()
            .map(Variable::Feature)
            .chain(Target::ALL.into_iter().map(Variable::Target))
            .collect()
    }

    pub fn name(self) -> &'static str {
        match self {
            Variable::Feature(f) => f.column(),
            Variable::Target(t) => t.column(),
        }
    }
}

/// Canonical CSV header, 21 columns.
pub fn csv_header() -> Vec<&'static str> {
    Variable::all().into_iter().map(Variable::name).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FeatureVector {
    pub biomass_c: f64,
    pub biomass_h: f64,
    pub biomass_n: f64,
    pub biomass_s: f64,
    pub biomass_o: f64,
    pub biomass_vm: f64,
    pub biomass_fc: f64,
    pub biomass_ash: f64,
    pub temperature: f64,
    pub time: f64,
    pub water_content: f64,
}

impl FeatureVector {
    pub fn from_array(v: [f64; Feature::COUNT]) -> Self {
        Self {
            biomass_c: v[0],
            biomass_h: v[1],
            biomass_n: v[2],
            biomass_s: v[3],
            biomass_o: v[4],
            biomass_vm: v[5],
            biomass_fc: v[6],
            biomass_ash: v[7],
            temperature: v[8],
            time: v[9],
            water_content: v[10],
        }
    }

    /// Panics unless `v` has exactly eleven entries.
    pub fn from_slice(v: &[f64]) -> Self {
        let arr: [f64; Feature::COUNT] = v.try_into().expect("feature vector must have 11 entries");
        Self::from_array(arr)
    }

    pub fn to_array(&self) -> [f64; Feature::COUNT] {
        [
            self.biomass_c,
            self.biomass_h,
            self.biomass_n,
            self.biomass_s,
            self.biomass_o,
            self.biomass_vm,
            self.biomass_fc,
            self.biomass_ash,
            self.temperature,
            self.time,
            self.water_content,
        ]
    }

    pub fn get(&self, feature: Feature) -> f64 {
        self.to_array()[feature.index()]
    }

    /// Checks the physical invariants; returns the first violated rule.
    pub fn check(&self) -> std::result::Result<(), String> {
        check_features(&self.to_array())
    }
}

/// Physical invariants on a raw 11-entry input vector.
pub fn check_features(v: &[f64]) -> std::result::Result<(), String> {
    for f in Feature::ALL {
        let x = v[f.index()];
        if !x.is_finite() {
            return Err(format!("{f} must be finite"));
        }
        if f.is_mass_fraction() && !(0.0..=100.0).contains(&x) {
            return Err(format!("{f} = {x} outside [0, 100] wt%"));
        }
    }
    if v[Feature::Temperature.index()] <= 0.0 {
        return Err("temperature_c must be positive".into());
    }
    if v[Feature::Time.index()] <= 0.0 {
        return Err("time_min must be positive".into());
    }
    let ultimate: f64 = v[..5].iter().sum();
    if ultimate > 100.0 + SUM_TOLERANCE {
        return Err(format!("ultimate analysis sums to {ultimate} > 100 wt%"));
    }
    let proximate: f64 = v[5..8].iter().sum();
    if proximate > 100.0 + SUM_TOLERANCE {
        return Err(format!("proximate analysis sums to {proximate} > 100 wt%"));
    }
    Ok(())
}

/// Hydrochar responses; each may be absent.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct TargetRecord {
    pub yield_pct: Option<f64>,
    pub hhv: Option<f64>,
    pub hc_vm: Option<f64>,
    pub hc_fc: Option<f64>,
    pub hc_ash: Option<f64>,
    pub hc_c: Option<f64>,
    pub hc_h: Option<f64>,
    pub hc_n: Option<f64>,
    pub hc_s: Option<f64>,
    pub hc_o: Option<f64>,
}

impl TargetRecord {
    fn slot(&mut self, target: Target) -> &mut Option<f64> {
        match target {
            Target::Yield => &mut self.yield_pct,
            Target::Hhv => &mut self.hhv,
            Target::VolatileMatter => &mut self.hc_vm,
            Target::FixedCarbon => &mut self.hc_fc,
            Target::Ash => &mut self.hc_ash,
            Target::Carbon => &mut self.hc_c,
            Target::Hydrogen => &mut self.hc_h,
            Target::Nitrogen => &mut self.hc_n,
            Target::Sulfur => &mut self.hc_s,
            Target::Oxygen => &mut self.hc_o,
        }
    }

    pub fn get(&self, target: Target) -> Option<f64> {
        let mut copy = *self;
        *copy.slot(target)
    }

    pub fn set(&mut self, target: Target, value: Option<f64>) {
        *self.slot(target) = value;
    }

    pub fn check(&self) -> std::result::Result<(), String> {
        for t in Target::ALL {
            if let Some(v) = self.get(t) {
                let (lo, hi, lo_inclusive) = t.valid_range();
                let above_lo = if lo_inclusive { v >= lo } else { v > lo };
                if !v.is_finite() || !above_lo || v > hi {
                    let open = if lo_inclusive { '[' } else { '(' };
                    return Err(format!("{t} = {v} outside {open}{lo}, {hi}]"));
                }
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Row {
    pub features: FeatureVector,
    pub targets: TargetRecord,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Dataset {
    rows: Vec<Row>,
    pub feature_names: Vec<String>,
    pub target_names: Vec<String>,
}

impl Dataset {
    /// Validates every row against the schema invariants.
    pub fn new(rows: Vec<Row>) -> Result<Self> {
        if rows.is_empty() {
            return Err(DataError::EmptyDataset);
        }
        for (i, row) in rows.iter().enumerate() {
            row.features
                .check()
                .and_then(|_| row.targets.check())
                .map_err(|rule| DataError::ConstraintViolation { row: i + 1, rule })?;
        }
        Ok(Self {
            rows,
            feature_names: Feature::ALL.iter().map(|f| f.column().to_string()).collect(),
            target_names: Target::ALL.iter().map(|t| t.column().to_string()).collect(),
        })
    }

    pub fn rows(&self) -> &[Row] {
        &self.rows
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn value(&self, row: usize, var: Variable) -> Option<f64> {
        let r = &self.rows[row];
        match var {
            Variable::Feature(f) => Some(r.features.get(f)),
            Variable::Target(t) => r.targets.get(t),
        }
    }

    /// Raw feature rows for the given indices.
    pub fn feature_matrix(&self, indices: &[usize]) -> Vec<Vec<f64>> {
        indices
            .iter()
            .map(|&i| self.rows[i].features.to_array().to_vec())
            .collect()
    }

    /// The subset of `indices` where `target` is present, with the values.
    pub fn present_rows(&self, indices: &[usize], target: Target) -> (Vec<usize>, Vec<f64>) {
        indices
            .iter()
            .filter_map(|&i| self.rows[i].targets.get(target).map(|v| (i, v)))
            .unzip()
    }

    /// Per-feature (min, max) over the given rows.
    pub fn feature_bounds(&self, indices: &[usize]) -> Vec<(f64, f64)> {
        let mut bounds = vec![(f64::INFINITY, f64::NEG_INFINITY); Feature::COUNT];
        for &i in indices {
            for (b, x) in bounds.iter_mut().zip(self.rows[i].features.to_array()) {
                b.0 = b.0.min(x);
                b.1 = b.1.max(x);
            }
        }
        bounds
    }

    /// SHA-256 of the canonical CSV serialization, hex encoded.
    pub fn fingerprint(&self) -> String {
        use sha2::{Digest, Sha256};
        let mut buf = Vec::new();
        write_csv_to(self, &mut buf).expect("in-memory csv write");
        hex::encode(Sha256::digest(&buf))
    }
}
