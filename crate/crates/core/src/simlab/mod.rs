//! Reproducible Monte Carlo experiments.
//!
//! Every replicate draws from its own ChaCha8 stream, keyed by the master
//! seed, a cell index and a replicate index. Results therefore do not depend
//! on the number of worker threads or on scheduling order.

mod experiments;
pub mod output;

pub use experiments::{
    calibrate_p, compare_methods, run_max_statistics, run_shrinkage_curves, run_table1,
    CalibrationReport, CalibrationRow, ComparisonReport, ComparisonRow, CurveRow, MaxStatRow,
    MethodSummary, Table1Row, COMPARED_METHODS,
};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sample::SortedSample;

pub type StreamRng = ChaCha8Rng;

/// Independent generator for replicate `replicate` of cell `cell`.
pub fn stream_rng(seed: u64, cell: u32, replicate: u32) -> StreamRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream((u64::from(cell) << 32) | u64::from(replicate));
    rng
}

/// `n` draws from `U[a, b]`, sorted.
pub fn sample_uniform<R: Rng + ?Sized>(
    n: usize,
    a: f64,
    b: f64,
    rng: &mut R,
) -> Result<SortedSample> {
    if !(b > a) {
        return Err(Error::domain(
            "sample_uniform",
            format!("need a < b, got [{a}, {b}]"),
        ));
    }
    let values = (0..n).map(|_| a + (b - a) * rng.random::<f64>()).collect();
    SortedSample::new(values)
}

/// `n` draws from `N(μ, σ²)`, sorted.
pub fn sample_gaussian<R: Rng + ?Sized>(
    n: usize,
    mu: f64,
    sigma: f64,
    rng: &mut R,
) -> Result<SortedSample> {
    let normal = Normal::new(mu, sigma)
        .ok()
        .filter(|_| sigma > 0.0)
        .ok_or_else(|| Error::domain("sample_gaussian", format!("sigma = {sigma} must be > 0")))?;
    let values = normal.sample_iter(rng).take(n).collect();
    SortedSample::new(values)
}

/// Draw on `(lo, hi]`, so a zero-width scale cannot come out of `[0, hi]`.
pub(crate) fn draw_scale<R: Rng + ?Sized>(lo: f64, hi: f64, rng: &mut R) -> f64 {
    hi - (hi - lo) * rng.random::<f64>()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub seed: u64,
    /// Replicates per model and cell.
    pub runs: usize,
    pub n_grid: Vec<usize>,
    pub p_grid: Vec<usize>,
    /// Range of the interval length `L` and of `σ` in the comparison.
    pub param_range: (f64, f64),
    pub alpha: f64,
    /// Worker threads; `None` uses every core. Does not affect results.
    #[serde(skip)]
    pub threads: Option<usize>,
}

pub const COMPARISON_N_GRID: [usize; 13] = [15, 20, 25, 30, 40, 50, 60, 70, 80, 90, 100, 150, 200];

impl ExperimentConfig {
    fn base(seed: u64) -> Self {
        ExperimentConfig {
            seed,
            runs: 100,
            n_grid: vec![100],
            p_grid: vec![6],
            param_range: (0.0, 20.0),
            alpha: crate::shrinkage::DEFAULT_ALPHA,
            threads: None,
        }
    }

    /// Extreme values of Gaussian samples: 1000 runs per n.
    pub fn max_statistics(seed: u64) -> Self {
        ExperimentConfig {
            runs: 1000,
            n_grid: vec![10, 100, 1_000, 10_000],
            ..Self::base(seed)
        }
    }

    /// Shrinkage curves at n = 100, depth 6, 10⁴ runs.
    pub fn shrinkage_curves(seed: u64) -> Self {
        ExperimentConfig {
            runs: 10_000,
            ..Self::base(seed)
        }
    }

    /// Accuracy versus depth p = 1..15, n = 100, 1000 samples per model.
    pub fn calibration(seed: u64) -> Self {
        ExperimentConfig {
            runs: 1000,
            p_grid: (1..=15).collect(),
            ..Self::base(seed)
        }
    }

    /// LRT versus shrinkage over the n grid, 100 samples per model and n.
    pub fn comparison(seed: u64) -> Self {
        ExperimentConfig {
            n_grid: COMPARISON_N_GRID.to_vec(),
            ..Self::base(seed)
        }
    }

    /// Tail approximations u_k, v_k at n = 100 and n = 499.
    pub fn table1(seed: u64) -> Self {
        ExperimentConfig {
            runs: 10_000,
            n_grid: vec![100, 499],
            p_grid: (0..=4).collect(),
            ..Self::base(seed)
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |detail: String| Err(Error::domain("ExperimentConfig", detail));
        if self.runs == 0 {
            return bad("runs must be >= 1".into());
        }
        if self.n_grid.is_empty() {
            return bad("n_grid must not be empty".into());
        }
        if self.p_grid.is_empty() {
            return bad("p_grid must not be empty".into());
        }
        let (lo, hi) = self.param_range;
        if !(lo < hi) || lo < 0.0 {
            return bad(format!(
                "param_range ({lo}, {hi}) must satisfy 0 <= lo < hi"
            ));
        }
        if !self.alpha.is_finite() {
            return bad("alpha must be finite".into());
        }
        if self.runs > u32::MAX as usize || self.n_grid.len() > u32::MAX as usize / 4 {
            return bad("grid too large".into());
        }
        Ok(())
    }
}

/// Maps `f` over `0..count` on a pool of `threads` workers, keeping order.
pub fn run_indexed<T, F>(threads: Option<usize>, count: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads.unwrap_or(0))
        .build()
        .expect("thread pool");
    pool.install(|| (0..count).into_par_iter().map(f).collect())
}

/// Mean and standard deviation (1/(N−1)), summed in input order.
pub fn mean_std(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    if values.is_empty() {
        return (f64::NAN, f64::NAN);
    }
    let mean = values.iter().sum::<f64>() / n;
    if values.len() < 2 {
        return (mean, f64::NAN);
    }
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, var.sqrt())
}
