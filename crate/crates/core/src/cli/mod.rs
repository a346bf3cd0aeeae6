//! Command-line interface: classify samples, run the Monte Carlo
//! experiments, and run the cluster-validation experiment.
//!
//! Exit codes: 0 success, 1 usage or I/O error, 2 degenerate sample.

mod config;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

pub use config::ConfigFile;

use crate::cluster1d::{self, ClusterExperimentConfig};
use crate::error::Error;
use crate::sample::SortedSample;
use crate::shrinkage::ShrinkageConfig;
use crate::simlab::output::{self, CsvRecord};
use crate::simlab::{self, ExperimentConfig};
use crate::verdict::{classify, Method};

pub const SEED_ENV: &str = "SPAN_SHRINK_SEED";
pub const DEFAULT_SEED: u64 = 2024;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Io(String),
    #[error("degenerate sample: {0}")]
    Degenerate(Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Io(_) => 1,
            CliError::Degenerate(_) => 2,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        if e.is_statistical_degeneracy() {
            CliError::Degenerate(e)
        } else {
            CliError::Usage(e.to_string())
        }
    }
}

fn io_err(path: &Path, e: std::io::Error) -> CliError {
    CliError::Io(format!("{}: {e}", path.display()))
}

#[derive(Debug, Parser)]
#[command(
    name = "span-shrink",
    version,
    about = "Uniform vs Gaussian model selection for 1-D samples"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Classify the sample in a CSV file (one value per line).
    Classify(ClassifyArgs),
    /// Accuracy of the shrinkage test versus trimming depth.
    Calibrate(RunArgs),
    /// Run one of the Monte Carlo experiments.
    Simulate(SimulateArgs),
    /// DBSCAN + significance testing on synthetic or given 1-D points.
    ClusterValidate(ClusterArgs),
}

#[derive(Debug, Args)]
pub struct ClassifyArgs {
    pub input: PathBuf,
    #[arg(long, value_enum, default_value_t = Method::Hybrid)]
    pub method: Method,
    #[arg(long, default_value_t = crate::shrinkage::DEFAULT_DEPTH)]
    pub p: usize,
    #[arg(long, default_value_t = crate::shrinkage::DEFAULT_ALPHA)]
    pub alpha: f64,
}

#[derive(Debug, Args, Default, Clone)]
pub struct RunArgs {
    /// Flat `key = value` file; flags take precedence.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Rerun from a manifest written by an earlier run.
    #[arg(long)]
    pub manifest: Option<PathBuf>,
    /// Master seed (falls back to $SPAN_SHRINK_SEED).
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub runs: Option<usize>,
    /// Sample sizes, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub n: Option<Vec<usize>>,
    /// Trimming depth (maximum depth for calibration).
    #[arg(long)]
    pub p: Option<usize>,
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long, default_value = "out")]
    pub out: PathBuf,
    /// Worker threads (default: all cores). Results do not depend on it.
    #[arg(long)]
    pub threads: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Experiment {
    /// Extreme values of Gaussian samples.
    Fig1,
    /// Shrinkage curves, Monte Carlo versus theory.
    Fig2,
    /// Accuracy versus trimming depth.
    Fig3c,
    /// Classifier accuracy versus sample size.
    Fig3d,
    /// Harmonic versus alternating-sum tail approximations.
    Table1,
    /// Aggregate classifier accuracy and AUC.
    Table2,
}

impl Experiment {
    fn name(self) -> &'static str {
        match self {
            Experiment::Fig1 => "fig1",
            Experiment::Fig2 => "fig2",
            Experiment::Fig3c => "fig3c",
            Experiment::Fig3d => "fig3d",
            Experiment::Table1 => "table1",
            Experiment::Table2 => "table2",
        }
    }

    fn preset(self, seed: u64) -> ExperimentConfig {
        match self {
            Experiment::Fig1 => ExperimentConfig::max_statistics(seed),
            Experiment::Fig2 => ExperimentConfig::shrinkage_curves(seed),
            Experiment::Fig3c => ExperimentConfig::calibration(seed),
            Experiment::Fig3d | Experiment::Table2 => ExperimentConfig::comparison(seed),
            Experiment::Table1 => ExperimentConfig::table1(seed),
        }
    }
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[arg(long, value_enum)]
    pub experiment: Experiment,
    #[command(flatten)]
    pub run: RunArgs,
}

#[derive(Debug, Args)]
pub struct ClusterArgs {
    #[command(flatten)]
    pub run: RunArgs,
    #[arg(long)]
    pub epsilon: Option<f64>,
    #[arg(long = "min-samples")]
    pub min_samples: Option<usize>,
    /// Cluster and classify the points in this CSV instead of synthetic data.
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Classifier applied to clusters of `--input`.
    #[arg(long, value_enum, default_value_t = Method::Hybrid)]
    pub method: Method,
    /// Also write every synthetic dataset as `points_<run>.csv`.
    #[arg(long)]
    pub save_points: bool,
}

/// Everything needed to rerun a command.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub subcommand: String,
    pub experiment: Option<String>,
    pub seed: u64,
    pub parameters: serde_json::Value,
    pub version: String,
    pub outputs: Vec<String>,
    pub duration_secs: f64,
}

impl RunManifest {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| io_err(path, e))?;
        serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
    }
}

fn resolve_seed(flag: Option<u64>) -> Result<Option<u64>, CliError> {
    if flag.is_some() {
        return Ok(flag);
    }
    match std::env::var(SEED_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map(Some)
            .map_err(|e| CliError::Usage(format!("{SEED_ENV}={v:?}: {e}"))),
        Err(_) => Ok(None),
    }
}

fn load_manifest_params<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, CliError> {
    let manifest = RunManifest::load(path)?;
    serde_json::from_value(manifest.parameters)
        .map_err(|e| CliError::Usage(format!("{}: parameters: {e}", path.display())))
}

/// Preset (or manifest) → config file → flags. The seed falls back to the
/// environment, then to [`DEFAULT_SEED`].
pub fn resolve_experiment(
    experiment: Experiment,
    args: &RunArgs,
) -> Result<ExperimentConfig, CliError> {
    let env_seed = resolve_seed(None)?;
    let mut config = match &args.manifest {
        Some(path) => load_manifest_params(path)?,
        None => experiment.preset(env_seed.unwrap_or(DEFAULT_SEED)),
    };
    if let Some(path) = &args.config {
        ConfigFile::load(path)?.apply_experiment(&mut config)?;
    }
    if let Some(seed) = args.seed {
        config.seed = seed;
    }
    if let Some(runs) = args.runs {
        config.runs = runs;
    }
    if let Some(n) = &args.n {
        config.n_grid = n.clone();
    }
    if let Some(p) = args.p {
        config.p_grid = match experiment {
            Experiment::Fig3c => (1..=p).collect(),
            Experiment::Table1 => (0..=p).collect(),
            _ => vec![p],
        };
    }
    if let Some(alpha) = args.alpha {
        config.alpha = alpha;
    }
    if args.threads.is_some() {
        config.threads = args.threads;
    }
    config
        .validate()
        .map_err(|e| CliError::Usage(e.to_string()))?;
    Ok(config)
}

pub fn resolve_cluster(args: &ClusterArgs) -> Result<ClusterExperimentConfig, CliError> {
    let env_seed = resolve_seed(None)?;
    let mut config = match &args.run.manifest {
        Some(path) => load_manifest_params(path)?,
        None => ClusterExperimentConfig::standard(env_seed.unwrap_or(DEFAULT_SEED)),
    };
    if let Some(path) = &args.run.config {
        ConfigFile::load(path)?.apply_cluster(&mut config)?;
    }
    let run = &args.run;
    if let Some(seed) = run.seed {
        config.seed = seed;
    }
    if let Some(runs) = run.runs {
        config.runs = runs;
    }
    if let Some(p) = run.p {
        config.shrinkage.depth = p;
    }
    if let Some(alpha) = run.alpha {
        config.shrinkage.alpha = alpha;
    }
    if let Some(eps) = args.epsilon {
        config.epsilon = eps;
    }
    if let Some(m) = args.min_samples {
        config.min_samples = m;
    }
    if run.threads.is_some() {
        config.threads = run.threads;
    }
    config
        .params
        .validate()
        .map_err(|e| CliError::Usage(e.to_string()))?;
    if config.runs == 0 || !(config.epsilon > 0.0) || config.min_samples == 0 {
        return Err(CliError::Usage(
            "runs, epsilon and min_samples must be positive".to_string(),
        ));
    }
    Ok(config)
}

/// Parses `std::env::args`, runs the command, and returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    let stdout = std::io::stdout();
    match execute(&cli, &mut stdout.lock()) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

/// Runs one command, writing human-facing output to `stdout`.
pub fn execute(cli: &Cli, stdout: &mut dyn Write) -> Result<(), CliError> {
    match &cli.command {
        Command::Classify(args) => cmd_classify(args, stdout),
        Command::Calibrate(args) => cmd_simulate(Experiment::Fig3c, "calibrate", args, stdout),
        Command::Simulate(args) => cmd_simulate(args.experiment, "simulate", &args.run, stdout),
        Command::ClusterValidate(args) => cmd_cluster_validate(args, stdout),
    }
}

fn write_out(stdout: &mut dyn Write, text: &str) -> Result<(), CliError> {
    stdout
        .write_all(text.as_bytes())
        .map_err(|e| CliError::Io(format!("stdout: {e}")))
}

pub fn cmd_classify(args: &ClassifyArgs, stdout: &mut dyn Write) -> Result<(), CliError> {
    let values = cluster1d::read_points_csv(&args.input).map_err(|e| io_err(&args.input, e))?;
    let sample = SortedSample::new(values)?;
    let config = ShrinkageConfig {
        depth: args.p,
        alpha: args.alpha,
    };
    let verdict = classify(args.method, &sample, &config)?;
    write_out(stdout, &output::to_json(&verdict))
}

struct OutDir {
    dir: PathBuf,
    written: Vec<String>,
}

impl OutDir {
    fn create(dir: &Path) -> Result<Self, CliError> {
        std::fs::create_dir_all(dir).map_err(|e| io_err(dir, e))?;
        Ok(OutDir {
            dir: dir.to_path_buf(),
            written: Vec::new(),
        })
    }

    fn csv<T: CsvRecord>(&mut self, name: &str, rows: &[T]) -> Result<(), CliError> {
        let path = self.dir.join(name);
        output::write_csv(&path, rows).map_err(|e| io_err(&path, e))?;
        self.written.push(name.to_string());
        Ok(())
    }

    fn json<T: Serialize + ?Sized>(&mut self, name: &str, value: &T) -> Result<(), CliError> {
        let path = self.dir.join(name);
        output::write_json(&path, value).map_err(|e| io_err(&path, e))?;
        self.written.push(name.to_string());
        Ok(())
    }

    fn text(&mut self, name: &str, text: &str) -> Result<(), CliError> {
        let path = self.dir.join(name);
        std::fs::write(&path, text).map_err(|e| io_err(&path, e))?;
        self.written.push(name.to_string());
        Ok(())
    }

    fn manifest(
        mut self,
        subcommand: &str,
        experiment: Option<&str>,
        seed: u64,
        parameters: serde_json::Value,
        started: Instant,
    ) -> Result<(), CliError> {
        let mut outputs = std::mem::take(&mut self.written);
        outputs.push("manifest.json".into());
        let manifest = RunManifest {
            subcommand: subcommand.into(),
            experiment: experiment.map(str::to_string),
            seed,
            parameters,
            version: crate::VERSION.into(),
            outputs,
            duration_secs: started.elapsed().as_secs_f64(),
        };
        self.json("manifest.json", &manifest)
    }
}

#[derive(Serialize)]
struct SummaryRow {
    method: Method,
    mean_accuracy: f64,
    auc: f64,
    auc_score: f64,
    excluded: usize,
}

impl CsvRecord for SummaryRow {
    const HEADER: &'static [&'static str] =
        &["method", "mean_accuracy", "auc", "auc_score", "excluded"];
    fn fields(&self) -> Vec<String> {
        vec![
            self.method.to_string(),
            output::fmt_real(self.mean_accuracy),
            output::fmt_real(self.auc),
            output::fmt_real(self.auc_score),
            self.excluded.to_string(),
        ]
    }
}

pub fn cmd_simulate(
    experiment: Experiment,
    subcommand: &str,
    args: &RunArgs,
    stdout: &mut dyn Write,
) -> Result<(), CliError> {
    let started = Instant::now();
    let config = resolve_experiment(experiment, args)?;
    let mut out = OutDir::create(&args.out)?;
    match experiment {
        Experiment::Fig1 => {
            let rows = simlab::run_max_statistics(&config)?;
            out.csv("max_statistics.csv", &rows)?;
            out.json("max_statistics.json", &rows)?;
        }
        Experiment::Fig2 => {
            let rows = simlab::run_shrinkage_curves(&config)?;
            out.csv("shrinkage_curves.csv", &rows)?;
            out.json("shrinkage_curves.json", &rows)?;
        }
        Experiment::Fig3c => {
            let report = simlab::calibrate_p(&config)?;
            out.csv("calibration.csv", &report.rows)?;
            out.json("calibration.json", &report)?;
        }
        Experiment::Fig3d | Experiment::Table2 => {
            let report = simlab::compare_methods(&config)?;
            if experiment == Experiment::Fig3d {
                out.csv("comparison_by_n.csv", &report.rows)?;
            } else {
                let rows: Vec<SummaryRow> = report
                    .summary
                    .iter()
                    .map(|s| SummaryRow {
                        method: s.method,
                        mean_accuracy: s.mean_accuracy,
                        auc: s.mean_auc,
                        auc_score: s.mean_auc_score,
                        excluded: s.excluded,
                    })
                    .collect();
                out.csv("comparison_summary.csv", &rows)?;
            }
            out.json("comparison.json", &report)?;
        }
        Experiment::Table1 => {
            let rows = simlab::run_table1(&config)?;
            out.csv("table1.csv", &rows)?;
            out.json("table1.json", &rows)?;
        }
    }
    let listing = out.written.join(", ");
    let params = serde_json::to_value(&config).expect("config serializes");
    out.manifest(
        subcommand,
        Some(experiment.name()),
        config.seed,
        params,
        started,
    )?;
    write_out(
        stdout,
        &format!(
            "{}: wrote {listing}, manifest.json to {}\n",
            experiment.name(),
            args.out.display()
        ),
    )
}

#[derive(Serialize)]
struct InputClusterSummary<'a> {
    points: usize,
    clusters: usize,
    noise_points: usize,
    excluded: usize,
    records: &'a [cluster1d::ClusterRecord],
}

pub fn cmd_cluster_validate(args: &ClusterArgs, stdout: &mut dyn Write) -> Result<(), CliError> {
    let started = Instant::now();
    let config = resolve_cluster(args)?;
    let mut out = OutDir::create(&args.run.out)?;

    if let Some(input) = &args.input {
        let points = cluster1d::read_points_csv(input).map_err(|e| io_err(input, e))?;
        let run = cluster1d::dbscan_1d(&points, config.epsilon, config.min_samples)?;
        let outcome =
            cluster1d::classify_clusters(&points, &run, None, args.method, &config.shrinkage)?;
        let summary = InputClusterSummary {
            points: points.len(),
            clusters: run.clusters.len(),
            noise_points: run.noise_count(),
            excluded: outcome.excluded,
            records: &outcome.records,
        };
        out.json("cluster_records.json", &outcome.records)?;
        let json = output::to_json(&summary);
        let params = serde_json::json!({
            "input": input.display().to_string(),
            "epsilon": config.epsilon,
            "min_samples": config.min_samples,
            "method": args.method,
            "shrinkage": config.shrinkage,
        });
        out.manifest("cluster-validate", None, config.seed, params, started)?;
        return write_out(stdout, &json);
    }

    let report = cluster1d::run_cluster_experiment(&config)?;
    if args.save_points {
        for r in 0..config.runs {
            let mut rng = simlab::stream_rng(config.seed, 0, r as u32);
            let dataset = cluster1d::generate_dataset(&config.params, &mut rng)?;
            let name = format!("points_{r:03}.csv");
            let path = args.run.out.join(&name);
            cluster1d::write_points_csv(&path, &dataset.points).map_err(|e| io_err(&path, e))?;
            out.written.push(name);
        }
    }
    out.json("cluster_validation.json", &report)?;
    out.json("cluster_records.json", &report.records)?;
    let line = format!(
        "balanced accuracy: hybrid {:.4}, lrt {:.4} ({} clusters, {} significant, {} runs)\n",
        report.balanced_accuracy_hybrid,
        report.balanced_accuracy_lrt,
        report.clusters_total,
        report.significant_total,
        report.runs
    );
    out.text("cluster_validation.txt", &line)?;
    let params = serde_json::to_value(&config).expect("config serializes");
    out.manifest("cluster-validate", None, config.seed, params, started)?;
    write_out(stdout, &line)
}
