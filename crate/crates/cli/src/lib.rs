//! Command-line workflow: validate, stats, train, evaluate, explain,
//! optimize and synth. Every structured artifact carries the schema
//! version, seed and tool version.

use std::collections::BTreeMap;
use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use hydrochar::data::{
    generate_synthetic, load_csv, sample_indices, van_krevelen, write_csv, DataError, Dataset, Feature, LoadedDataset,
    Target, Variable,
};
use hydrochar::gaopt::{optimize_profile, report, GaConfig, GaError, ObjectiveProfile};
use hydrochar::pipeline::{
    evaluate, shared_split, train_all, HyperGrid, ModelKind, PipelineError, TrainedTarget, TOOL_VERSION,
};
use hydrochar::shapley::{emit_plot_data, global_importance, ShapError};
use hydrochar::stats::{correlation_matrix, factor_analysis, CorrelationMatrix, FactorResult, MetricsReport, StatsError};
use hydrochar::SCHEMA_VERSION;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Parser)]
#[command(name = "hydrochar", version, about = "Hydrochar surrogate modeling workflow")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Input dataset in the canonical CSV schema.
    #[arg(long, global = true)]
    pub data: Option<PathBuf>,
    /// Output directory, created if absent.
    #[arg(long, global = true, default_value = "out")]
    pub out: PathBuf,
    #[arg(long, global = true, default_value_t = 42)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = ModelChoice::Both)]
    pub model: ModelChoice,
    /// JSON hyperparameter grid replacing the default one.
    #[arg(long, global = true)]
    pub grid: Option<PathBuf>,
    /// Built-in profile name or path to a JSON direction map.
    #[arg(long, global = true, default_value = "energy")]
    pub application: String,
    /// Background rows for Shapley values.
    #[arg(long, global = true, default_value_t = 64)]
    pub background: usize,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Load and check a dataset.
    Validate,
    /// Correlation matrix, factor analysis and van Krevelen ratios.
    Stats,
    /// Grid-search, fit and evaluate one model per target.
    Train,
    /// Re-evaluate stored models against a dataset.
    Evaluate,
    /// Shapley attribution tables and bar chart for one target.
    Explain {
        #[arg(long)]
        target: String,
    },
    /// Search inputs that best serve an application.
    Optimize {
        #[arg(long, default_value_t = 1000)]
        population: usize,
        #[arg(long, default_value_t = 200)]
        generations: usize,
    },
    /// Write a synthetic dataset.
    Synth {
        #[arg(long, default_value_t = 500)]
        n: usize,
        #[arg(long, default_value_t = 0.0)]
        noise: f64,
        /// Destination file; defaults to `<out>/synthetic.csv`.
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModelChoice {
    Dtr,
    Svr,
    Both,
}

impl ModelChoice {
    pub fn kinds(self) -> Vec<ModelKind> {
        match self {
            ModelChoice::Dtr => vec![ModelKind::Dtr],
            ModelChoice::Svr => vec![ModelKind::Svr],
            ModelChoice::Both => ModelKind::ALL.to_vec(),
        }
    }

    /// The family used by single-model commands.
    pub fn primary(self) -> ModelKind {
        match self {
            ModelChoice::Svr => ModelKind::Svr,
            _ => ModelKind::Dtr,
        }
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Internal(String),
    #[error("model file not found: {}", .0.display())]
    MissingModelFile(PathBuf),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) | CliError::MissingModelFile(_) => 1,
            CliError::Internal(_) => 2,
        }
    }
}

impl From<DataError> for CliError {
    fn from(e: DataError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<StatsError> for CliError {
    fn from(e: StatsError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<GaError> for CliError {
    fn from(e: GaError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<ShapError> for CliError {
    fn from(e: ShapError) -> Self {
        CliError::Internal(e.to_string())
    }
}

impl From<PipelineError> for CliError {
    fn from(e: PipelineError) -> Self {
        match e {
            PipelineError::TooFewRows { .. } | PipelineError::Grid(_) | PipelineError::EmptyGrid | PipelineError::Data(_) => {
                CliError::Input(e.to_string())
            }
            other => CliError::Internal(other.to_string()),
        }
    }
}

/// Prints a line to stdout; a closed pipe is not an error.
macro_rules! out {
    ($($arg:tt)*) => {{
        let _ = writeln!(io::stdout().lock(), $($arg)*);
    }};
}

type Result<T, E = CliError> = std::result::Result<T, E>;

fn write_err(path: &Path, e: impl std::fmt::Display) -> CliError {
    CliError::Internal(format!("writing {}: {e}", path.display()))
}

fn read_err(path: &Path, e: impl std::fmt::Display) -> CliError {
    CliError::Input(format!("reading {}: {e}", path.display()))
}

/// Provenance fields shared by every artifact.
#[derive(Clone, Debug, Serialize)]
pub struct Provenance {
    pub schema_version: u32,
    pub seed: u64,
    pub tool_version: String,
}

impl Provenance {
    fn new(seed: u64) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            seed,
            tool_version: TOOL_VERSION.to_string(),
        }
    }

    fn comment_line(&self) -> String {
        format!(
            "# schema_version={} seed={} tool_version={}",
            self.schema_version, self.seed, self.tool_version
        )
    }
}

#[derive(Serialize)]
struct WithProvenance<'a, T: Serialize> {
    #[serde(flatten)]
    provenance: Provenance,
    #[serde(flatten)]
    body: &'a T,
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value).map_err(|e| write_err(path, e))?;
    text.push('\n');
    fs::write(path, text).map_err(|e| write_err(path, e))
}

fn write_json_with<T: Serialize>(path: &Path, seed: u64, body: &T) -> Result<()> {
    write_json(
        path,
        &WithProvenance {
            provenance: Provenance::new(seed),
            body,
        },
    )
}

/// Writes a CSV artifact whose first line is the provenance comment.
fn write_csv_artifact(path: &Path, seed: u64, fill: impl FnOnce(&mut dyn Write) -> io::Result<()>) -> Result<()> {
    let file = fs::File::create(path).map_err(|e| write_err(path, e))?;
    let mut w = BufWriter::new(file);
    writeln!(w, "{}", Provenance::new(seed).comment_line()).map_err(|e| write_err(path, e))?;
    fill(&mut w).map_err(|e| write_err(path, e))?;
    w.flush().map_err(|e| write_err(path, e))
}

pub struct Context {
    pub cli: Cli,
}

impl Context {
    fn out_dir(&self, sub: Option<&str>) -> Result<PathBuf> {
        let dir = match sub {
            Some(s) => self.cli.out.join(s),
            None => self.cli.out.clone(),
        };
        fs::create_dir_all(&dir).map_err(|e| write_err(&dir, e))?;
        Ok(dir)
    }

    fn data_path(&self) -> Result<&Path> {
        self.cli
            .data
            .as_deref()
            .ok_or_else(|| CliError::Input("--data is required for this command".into()))
    }

    fn load(&self) -> Result<LoadedDataset> {
        let path = self.data_path()?;
        load_csv(path).map_err(|e| match e {
            DataError::Io(e) => read_err(path, e),
            other => other.into(),
        })
    }

    fn grid(&self) -> Result<HyperGrid> {
        match &self.cli.grid {
            Some(path) => {
                let text = fs::read_to_string(path).map_err(|e| read_err(path, e))?;
                Ok(HyperGrid::from_json(&text)?)
            }
            None => Ok(HyperGrid::default()),
        }
    }

    fn profile(&self) -> Result<ObjectiveProfile> {
        let app = &self.cli.application;
        if ObjectiveProfile::BUILT_IN.contains(&app.as_str()) {
            return Ok(ObjectiveProfile::built_in(app)?);
        }
        let path = Path::new(app);
        if path.is_file() {
            let text = fs::read_to_string(path).map_err(|e| read_err(path, e))?;
            let name = path.file_stem().and_then(|s| s.to_str()).unwrap_or("custom");
            return Ok(ObjectiveProfile::from_json(name, &text)?);
        }
        Err(GaError::UnknownApplication(app.clone()).into())
    }

    fn model_path(&self, kind: ModelKind, target: Target) -> PathBuf {
        self.cli
            .out
            .join("models")
            .join(format!("{}_{}.json", kind.name(), target.column()))
    }

    fn load_model(&self, kind: ModelKind, target: Target) -> Result<TrainedTarget> {
        let path = self.model_path(kind, target);
        if !path.is_file() {
            return Err(CliError::MissingModelFile(path));
        }
        let text = fs::read_to_string(&path).map_err(|e| read_err(&path, e))?;
        TrainedTarget::from_json(&text).map_err(|e| read_err(&path, e))
    }
}

pub fn run(cli: Cli) -> Result<()> {
    let ctx = Context { cli };
    match &ctx.cli.command {
        Command::Validate => cmd_validate(&ctx),
        Command::Stats => cmd_stats(&ctx),
        Command::Train => cmd_train(&ctx),
        Command::Evaluate => cmd_evaluate(&ctx),
        Command::Explain { target } => cmd_explain(&ctx, target),
        Command::Optimize { population, generations } => cmd_optimize(&ctx, *population, *generations),
        Command::Synth { n, noise, output } => cmd_synth(&ctx, *n, *noise, output.as_deref()),
    }
}

/// Parses `args` (program name first) and runs; returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match run(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn cmd_validate(ctx: &Context) -> Result<()> {
    let loaded = ctx.load()?;
    let ds = &loaded.dataset;
    out!("n_rows: {}", ds.len());
    out!("missing values per target column:");
    for t in Target::ALL {
        let missing = ds.rows().iter().filter(|r| r.targets.get(t).is_none()).count();
        out!("  {:<14} {missing}", t.column());
    }
    out!("warnings: {}", loaded.warnings.len());
    for w in &loaded.warnings {
        out!("  {w}");
    }
    Ok(())
}

#[derive(Serialize)]
struct FactorsFile<'a> {
    eigenvalues: &'a [f64],
    variance_fraction: &'a [f64],
    cumulative_fraction: &'a [f64],
    labels: &'a [String],
    n_rows: usize,
    loadings: &'a [Vec<f64>],
}

impl<'a> From<&'a FactorResult> for FactorsFile<'a> {
    fn from(f: &'a FactorResult) -> Self {
        Self {
            eigenvalues: &f.eigenvalues,
            variance_fraction: &f.variance_fraction,
            cumulative_fraction: &f.cumulative_fraction,
            labels: &f.labels,
            n_rows: f.n_rows,
            loadings: &f.loadings,
        }
    }
}

fn ratio_cells(c: Option<f64>, h: Option<f64>, o: Option<f64>) -> (String, String) {
    match (c, h, o) {
        (Some(c), Some(h), Some(o)) => match van_krevelen(c, h, o) {
            Ok(r) => (r.h_over_c.to_string(), r.o_over_c.to_string()),
            Err(_) => (String::new(), String::new()),
        },
        _ => (String::new(), String::new()),
    }
}

fn cmd_stats(ctx: &Context) -> Result<()> {
    let ds = ctx.load()?.dataset;
    let seed = ctx.cli.seed;
    let dir = ctx.out_dir(None)?;

    let corr: CorrelationMatrix = correlation_matrix(&ds)?;
    write_csv_artifact(&dir.join("correlation_matrix.csv"), seed, |w| corr.write_csv(w))?;
    write_json_with(&dir.join("correlation_matrix.json"), seed, &corr)?;

    // Inputs are never missing, so they are the fallback selection.
    let factors = match factor_analysis(&ds, &Variable::all()) {
        Err(StatsError::TooFewRows { .. }) => {
            out!("too few rows complete on all columns; factor analysis uses the inputs only");
            let inputs: Vec<Variable> = Feature::ALL.into_iter().map(Variable::Feature).collect();
            factor_analysis(&ds, &inputs)?
        }
        other => other?,
    };
    write_json_with(&dir.join("factors.json"), seed, &FactorsFile::from(&factors))?;

    let hc = |r: &hydrochar::data::Row| (r.targets.get(Target::Carbon), r.targets.get(Target::Hydrogen), r.targets.get(Target::Oxygen));
    let any_hydrochar = ds.rows().iter().any(|r| matches!(hc(r), (Some(_), Some(_), Some(_))));
    write_csv_artifact(&dir.join("van_krevelen.csv"), seed, |w| {
        if any_hydrochar {
            writeln!(w, "row,biomass_h_c,biomass_o_c,hydrochar_h_c,hydrochar_o_c")?;
        } else {
            writeln!(w, "row,biomass_h_c,biomass_o_c")?;
        }
        for (i, r) in ds.rows().iter().enumerate() {
            let f = &r.features;
            let (bh, bo) = ratio_cells(Some(f.biomass_c), Some(f.biomass_h), Some(f.biomass_o));
            if any_hydrochar {
                let (c, h, o) = hc(r);
                let (hh, ho) = ratio_cells(c, h, o);
                writeln!(w, "{},{bh},{bo},{hh},{ho}", i + 1)?;
            } else {
                writeln!(w, "{},{bh},{bo}", i + 1)?;
            }
        }
        Ok(())
    })?;

    out!("rows: {}", ds.len());
    out!("leading eigenvalues:");
    for (k, (l, c)) in factors.eigenvalues.iter().zip(&factors.cumulative_fraction).take(5).enumerate() {
        out!("  F{:<2} {l:>8.4}  cumulative {:.4}", k + 1, c);
    }
    out!("wrote correlation_matrix.csv, correlation_matrix.json, factors.json, van_krevelen.csv");
    Ok(())
}

fn print_metrics_table(rows: &[(ModelKind, Target, MetricsReport, MetricsReport)]) {
    out!(
        "{:<5} {:<10} {:>9} {:>10} {:>10} {:>9} {:>10} {:>10}",
        "model", "target", "train_r2", "train_rmse", "train_mae", "test_r2", "test_rmse", "test_mae"
    );
    for (k, t, tr, te) in rows {
        out!(
            "{:<5} {:<10} {:>9.4} {:>10.4} {:>10.4} {:>9.4} {:>10.4} {:>10.4}",
            k.name(),
            t.column(),
            tr.r2,
            tr.rmse,
            tr.mae,
            te.r2,
            te.rmse,
            te.mae
        );
    }
}

fn cmd_train(ctx: &Context) -> Result<()> {
    let ds = ctx.load()?.dataset;
    let grid = ctx.grid()?;
    let kinds = ctx.cli.model.kinds();
    let outcome = train_all(&ds, &grid, ctx.cli.seed, &kinds)?;

    let dir = ctx.out_dir(None)?;
    let models_dir = ctx.out_dir(Some("models"))?;
    for m in &outcome.models {
        let path = models_dir.join(format!("{}_{}.json", m.model_kind.name(), m.target.column()));
        fs::write(&path, m.to_json() + "\n").map_err(|e| write_err(&path, e))?;
    }
    let report_path = dir.join("report.json");
    fs::write(&report_path, outcome.report.to_json() + "\n").map_err(|e| write_err(&report_path, e))?;

    let rows: Vec<_> = outcome
        .models
        .iter()
        .map(|m| (m.model_kind, m.target, m.train_metrics, m.test_metrics))
        .collect();
    print_metrics_table(&rows);
    for s in &outcome.report.skipped {
        out!("skipped {} {}: {}", s.model.name(), s.target.column(), s.reason);
    }
    if outcome.models.is_empty() {
        return Err(CliError::Input("no target could be trained".into()));
    }
    out!("wrote {} and {} model files", report_path.display(), outcome.models.len());
    Ok(())
}

#[derive(Serialize)]
struct EvaluationEntry {
    /// `split` when the dataset matches the training fingerprint, else `all_rows`.
    mode: &'static str,
    train: Option<MetricsReport>,
    test: Option<MetricsReport>,
    all_rows: Option<MetricsReport>,
}

fn cmd_evaluate(ctx: &Context) -> Result<()> {
    let ds = ctx.load()?.dataset;
    let fingerprint = ds.fingerprint();
    let mut results: BTreeMap<ModelKind, BTreeMap<Target, EvaluationEntry>> = BTreeMap::new();
    let mut table = Vec::new();
    for kind in ctx.cli.model.kinds() {
        for target in Target::ALL {
            let model = match ctx.load_model(kind, target) {
                Ok(m) => m,
                Err(CliError::MissingModelFile(_)) => continue,
                Err(e) => return Err(e),
            };
            let metrics_on = |rows: &[usize]| -> Result<Option<MetricsReport>> {
                let (present, y) = ds.present_rows(rows, target);
                if present.len() < 2 {
                    return Ok(None);
                }
                Ok(evaluate(&model, &ds.feature_matrix(&present), &y).ok())
            };
            let entry = if model.dataset_fingerprint == fingerprint {
                let plan = shared_split(&ds, model.seed)?;
                EvaluationEntry {
                    mode: "split",
                    train: metrics_on(&plan.train_indices)?,
                    test: metrics_on(&plan.test_indices)?,
                    all_rows: None,
                }
            } else {
                let all: Vec<usize> = (0..ds.len()).collect();
                EvaluationEntry {
                    mode: "all_rows",
                    train: None,
                    test: None,
                    all_rows: metrics_on(&all)?,
                }
            };
            if let (Some(tr), Some(te)) = (entry.train, entry.test) {
                table.push((kind, target, tr, te));
            } else if let Some(a) = entry.all_rows {
                out!("{} {}: r2 {:.4} rmse {:.4} mae {:.4}", kind.name(), target.column(), a.r2, a.rmse, a.mae);
            }
            results.entry(kind).or_default().insert(target, entry);
        }
    }
    if results.is_empty() {
        return Err(CliError::MissingModelFile(ctx.cli.out.join("models")));
    }
    print_metrics_table(&table);
    let dir = ctx.out_dir(None)?;
    #[derive(Serialize)]
    struct EvaluationFile<'a> {
        dataset_fingerprint: &'a str,
        models: &'a BTreeMap<ModelKind, BTreeMap<Target, EvaluationEntry>>,
    }
    write_json_with(
        &dir.join("evaluation.json"),
        ctx.cli.seed,
        &EvaluationFile {
            dataset_fingerprint: &fingerprint,
            models: &results,
        },
    )
}

fn cmd_explain(ctx: &Context, target_name: &str) -> Result<()> {
    let target = Target::from_column(target_name)
        .ok_or_else(|| CliError::Input(format!("unknown target `{target_name}`")))?;
    let kind = ctx.cli.model.primary();
    let model = ctx.load_model(kind, target)?;
    let ds = ctx.load()?.dataset;
    if ctx.cli.background == 0 {
        return Err(CliError::Input("--background must be at least 1".into()));
    }

    // Background from training rows and explained rows from test rows of the
    // model's own split; any other dataset is used whole for both.
    let all: Vec<usize> = (0..ds.len()).collect();
    let (train_pool, explain_pool) = if model.dataset_fingerprint == ds.fingerprint() {
        let plan = shared_split(&ds, model.seed)?;
        (plan.train_indices, plan.test_indices)
    } else {
        (all.clone(), all)
    };
    let background_rows = sample_indices(&train_pool, ctx.cli.background, model.seed);
    let background = ds.feature_matrix(&background_rows);
    let (explained_rows, _) = ds.present_rows(&explain_pool, target);
    let explained_rows = if explained_rows.is_empty() { explain_pool } else { explained_rows };
    let rows = ds.feature_matrix(&explained_rows);

    let f = |x: &[f64]| model.predict(x);
    let (importance, explanations) = global_importance(&f, &rows, &background)?;
    let names: Vec<String> = Feature::ALL.iter().map(|f| f.column().to_string()).collect();
    let tables = emit_plot_data(&explanations, &names)?;

    let dir = ctx.out_dir(Some(&format!("explain/{}_{}", kind.name(), target.column())))?;
    let seed = model.seed;
    write_csv_artifact(&dir.join("beeswarm.csv"), seed, |w| tables.write_beeswarm_csv(w))?;
    write_csv_artifact(&dir.join("bar.csv"), seed, |w| tables.write_bar_csv(w))?;
    write_csv_artifact(&dir.join("heatmap.csv"), seed, |w| tables.write_heatmap_csv(w))?;
    let svg_path = dir.join("importance.svg");
    let provenance = Provenance::new(seed);
    let svg = format!(
        "<!-- schema_version={} seed={} tool_version={} -->\n{}",
        provenance.schema_version,
        provenance.seed,
        provenance.tool_version,
        tables.bar_svg(&format!("mean |SHAP| for {}", target.column()))
    );
    fs::write(&svg_path, svg).map_err(|e| write_err(&svg_path, e))?;

    out!(
        "{} {}: {} rows explained against {} background rows",
        kind.name(),
        target.column(),
        rows.len(),
        background.len()
    );
    for &i in &importance.ranking {
        out!("  {:<14} {:.6}", names[i], importance.mean_abs_phi[i]);
    }
    out!("wrote {}", dir.display());
    Ok(())
}

fn cmd_optimize(ctx: &Context, population: usize, generations: usize) -> Result<()> {
    let profile = ctx.profile()?;
    let kind = ctx.cli.model.primary();
    let mut models = Vec::new();
    for target in Target::ALL {
        match ctx.load_model(kind, target) {
            Ok(m) => models.push(m),
            Err(CliError::MissingModelFile(p)) => {
                if profile.active().iter().any(|(t, _)| *t == target) {
                    return Err(CliError::MissingModelFile(p));
                }
            }
            Err(e) => return Err(e),
        }
    }

    // Union of the training ranges; a degenerate gene gets a sliver of width.
    let mut bounds = vec![(f64::INFINITY, f64::NEG_INFINITY); Feature::COUNT];
    for m in &models {
        for (b, &(lo, hi)) in bounds.iter_mut().zip(&m.input_bounds) {
            b.0 = b.0.min(lo);
            b.1 = b.1.max(hi);
        }
    }
    for b in &mut bounds {
        if b.1 <= b.0 {
            b.1 = b.0 + 1e-9 * b.0.abs().max(1.0);
        }
    }

    let config = GaConfig {
        generations,
        ..GaConfig::new(bounds, ctx.cli.seed).with_population(population)
    };
    let result = optimize_profile(&models, &profile, &config)?;
    let doc = report(&result, &profile, &config);
    let dir = ctx.out_dir(None)?;
    let path = dir.join("optimum.json");
    fs::write(&path, doc.to_json() + "\n").map_err(|e| write_err(&path, e))?;
    out!("{}", doc.to_table().trim_end());
    out!("wrote {}", path.display());
    Ok(())
}

fn cmd_synth(ctx: &Context, n: usize, noise: f64, output: Option<&Path>) -> Result<()> {
    if n == 0 {
        return Err(CliError::Input("--n must be at least 1".into()));
    }
    if !(noise >= 0.0 && noise.is_finite()) {
        return Err(CliError::Input("--noise must be a finite non-negative number".into()));
    }
    let ds: Dataset = generate_synthetic(n, ctx.cli.seed, noise)?;
    let path = match output {
        Some(p) => {
            if let Some(parent) = p.parent().filter(|p| !p.as_os_str().is_empty()) {
                fs::create_dir_all(parent).map_err(|e| write_err(parent, e))?;
            }
            p.to_path_buf()
        }
        None => ctx.out_dir(None)?.join("synthetic.csv"),
    };
    write_csv(&ds, &path).map_err(|e| write_err(&path, e))?;
    out!("wrote {} rows to {}", n, path.display());
    Ok(())
}
