use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use super::{
    draw_scale, mean_std, run_indexed, sample_gaussian, sample_uniform, stream_rng,
    ExperimentConfig,
};
use crate::error::{Error, Result};
use crate::metrics::roc_auc;
use crate::order_stats::{
    gaussian_expected_max_abs, gaussian_expected_max_abs_refined,
    gaussian_expected_order_stat_harmonic, gaussian_expected_order_stat_sum,
};
use crate::shrinkage::{
    empirical_profile, gaussian_curve, uniform_curve, CurveModel, ShrinkageConfig,
};
use crate::verdict::{classify, Method};

const MODELS: [CurveModel; 2] = [CurveModel::Uniform, CurveModel::Gaussian];

fn draw_model_sample(
    model: CurveModel,
    n: usize,
    rng: &mut super::StreamRng,
) -> Result<crate::SortedSample> {
    match model {
        CurveModel::Uniform => sample_uniform(n, 0.0, 1.0, rng),
        CurveModel::Gaussian => sample_gaussian(n, 0.0, 1.0, rng),
    }
}

fn max_depth(config: &ExperimentConfig) -> usize {
    config.p_grid.iter().copied().max().unwrap_or(0)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurveRow {
    pub model: CurveModel,
    pub n: usize,
    pub step: usize,
    pub trials: usize,
    pub excluded: usize,
    pub mean: f64,
    pub std: f64,
    /// Expected ratio from the model curve (Gaussian: shifted by α).
    pub theory: f64,
    /// Gaussian curve without the α shift; equals `theory` for Uniform.
    pub theory_unshifted: f64,
}

/// Monte Carlo mean and spread of each shrinkage ratio `T_1..T_p` for
/// `U[0, 1]` and `N(0, 1)` samples, next to the model curves.
pub fn run_shrinkage_curves(config: &ExperimentConfig) -> Result<Vec<CurveRow>> {
    config.validate()?;
    let depth = max_depth(config);
    let mut rows = Vec::new();
    for (ni, &n) in config.n_grid.iter().enumerate() {
        let uniform = uniform_curve(n, depth)?;
        let gaussian = gaussian_curve(n, depth, config.alpha)?;
        let gaussian_raw = gaussian_curve(n, depth, 0.0)?;
        for (mi, &model) in MODELS.iter().enumerate() {
            let cell = (2 * ni + mi) as u32;
            let profiles = run_indexed(config.threads, config.runs, |r| {
                let mut rng = stream_rng(config.seed, cell, r as u32);
                let sample = draw_model_sample(model, n, &mut rng).ok()?;
                empirical_profile(&sample, depth).ok().map(|p| p.ratios)
            });
            let kept: Vec<Vec<f64>> = profiles.into_iter().flatten().collect();
            let excluded = config.runs - kept.len();
            for step in 1..=depth {
                let values: Vec<f64> = kept.iter().map(|r| r[step - 1]).collect();
                let (mean, std) = mean_std(&values);
                let (theory, theory_unshifted) = match model {
                    CurveModel::Uniform => {
                        let u = uniform.expected_ratios[step - 1];
                        (u, u)
                    }
                    CurveModel::Gaussian => (
                        gaussian.expected_ratios[step - 1],
                        gaussian_raw.expected_ratios[step - 1],
                    ),
                };
                rows.push(CurveRow {
                    model,
                    n,
                    step,
                    trials: kept.len(),
                    excluded,
                    mean,
                    std,
                    theory,
                    theory_unshifted,
                });
            }
        }
    }
    Ok(rows)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MaxStatRow {
    pub n: usize,
    pub trials: usize,
    pub mean_max_abs: f64,
    pub std_max_abs: f64,
    pub mean_max: f64,
    pub std_max: f64,
    /// `σ√(π ln n / 2)`.
    pub estimator: f64,
    /// `σ√(2 ln n) + σ ln(4π)/(2√(2 ln n))`.
    pub refined: f64,
}

/// Extreme values of `N(0, 1)` samples: `max |X_i|` and `max X_i`.
pub fn run_max_statistics(config: &ExperimentConfig) -> Result<Vec<MaxStatRow>> {
    config.validate()?;
    let mut rows = Vec::new();
    for (ni, &n) in config.n_grid.iter().enumerate() {
        let estimator = gaussian_expected_max_abs(n, 1.0)?;
        let refined = gaussian_expected_max_abs_refined(n, 1.0)?;
        let extremes = run_indexed(config.threads, config.runs, |r| {
            let mut rng = stream_rng(config.seed, ni as u32, r as u32);
            let mut max = f64::NEG_INFINITY;
            let mut max_abs = 0.0_f64;
            for _ in 0..n {
                let x: f64 = StandardNormal.sample(&mut rng);
                max = max.max(x);
                max_abs = max_abs.max(x.abs());
            }
            (max_abs, max)
        });
        let abs: Vec<f64> = extremes.iter().map(|e| e.0).collect();
        let top: Vec<f64> = extremes.iter().map(|e| e.1).collect();
        let (mean_max_abs, std_max_abs) = mean_std(&abs);
        let (mean_max, std_max) = mean_std(&top);
        rows.push(MaxStatRow {
            n,
            trials: config.runs,
            mean_max_abs,
            std_max_abs,
            mean_max,
            std_max,
            estimator,
            refined,
        });
    }
    Ok(rows)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CalibrationRow {
    pub depth: usize,
    pub n: usize,
    /// Classified samples (both models); excludes failed trials.
    pub trials: usize,
    pub excluded: usize,
    pub accuracy: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CalibrationReport {
    pub n: usize,
    pub runs_per_model: usize,
    pub alpha: f64,
    pub rows: Vec<CalibrationRow>,
}

impl CalibrationReport {
    pub fn accuracy_at(&self, depth: usize) -> Option<f64> {
        self.rows
            .iter()
            .find(|r| r.depth == depth)
            .map(|r| r.accuracy)
    }
}

/// Shrinkage-classifier accuracy for each depth in `p_grid`, on `U[0, 1]`
/// and `N(0, 1)` samples of size `n_grid[0]`. Every depth sees the same
/// samples.
pub fn calibrate_p(config: &ExperimentConfig) -> Result<CalibrationReport> {
    config.validate()?;
    let n = config.n_grid[0];
    let outcomes = run_indexed(config.threads, config.runs, |r| {
        MODELS
            .iter()
            .enumerate()
            .map(|(mi, &model)| {
                let mut rng = stream_rng(config.seed, mi as u32, r as u32);
                let sample = draw_model_sample(model, n, &mut rng);
                config
                    .p_grid
                    .iter()
                    .map(|&depth| {
                        let cfg = ShrinkageConfig {
                            depth,
                            alpha: config.alpha,
                        };
                        let sample = sample.as_ref().ok()?;
                        let verdict = classify(Method::Shrinkage, sample, &cfg).ok()?;
                        Some(verdict.is_gaussian() == (model == CurveModel::Gaussian))
                    })
                    .collect::<Vec<Option<bool>>>()
            })
            .collect::<Vec<_>>()
    });
    let rows = config
        .p_grid
        .iter()
        .enumerate()
        .map(|(pi, &depth)| {
            let results: Vec<bool> = outcomes
                .iter()
                .flat_map(|per_model| per_model.iter().filter_map(|o| o[pi]))
                .collect();
            let correct = results.iter().filter(|&&c| c).count();
            CalibrationRow {
                depth,
                n,
                trials: results.len(),
                excluded: 2 * config.runs - results.len(),
                accuracy: correct as f64 / results.len() as f64,
            }
        })
        .collect();
    Ok(CalibrationReport {
        n,
        runs_per_model: config.runs,
        alpha: config.alpha,
        rows,
    })
}

pub const COMPARED_METHODS: [Method; 3] = [Method::Lrt, Method::Shrinkage, Method::Hybrid];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonRow {
    pub method: Method,
    pub n: usize,
    pub trials: usize,
    pub excluded: usize,
    pub accuracy: f64,
    /// Mann–Whitney AUC of the hard decision (1 = Gaussian).
    pub auc: f64,
    /// Mann–Whitney AUC of the confidence-derived Gaussian score.
    pub auc_score: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MethodSummary {
    pub method: Method,
    pub mean_accuracy: f64,
    pub mean_auc: f64,
    pub mean_auc_score: f64,
    pub excluded: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonReport {
    pub runs_per_model: usize,
    pub depth: usize,
    pub alpha: f64,
    pub param_range: (f64, f64),
    pub rows: Vec<ComparisonRow>,
    pub summary: Vec<MethodSummary>,
}

impl ComparisonReport {
    pub fn summary_for(&self, method: Method) -> Option<&MethodSummary> {
        self.summary.iter().find(|s| s.method == method)
    }

    pub fn row(&self, method: Method, n: usize) -> Option<&ComparisonRow> {
        self.rows.iter().find(|r| r.method == method && r.n == n)
    }
}

/// (predicted Gaussian, Gaussian score) for each model, per method.
type TrialOutcome = [[Option<(bool, f64)>; 2]; 3];

/// Likelihood ratio, shrinkage and hybrid classifiers on `U(0, L)` and
/// `N(0, σ²)` samples, with `L` and `σ` redrawn from `param_range` for every
/// sample. All methods see the same samples. The shrinkage depth is
/// `p_grid[0]`.
pub fn compare_methods(config: &ExperimentConfig) -> Result<ComparisonReport> {
    config.validate()?;
    let depth = config.p_grid[0];
    let shrink_cfg = ShrinkageConfig {
        depth,
        alpha: config.alpha,
    };
    let (lo, hi) = config.param_range;
    let mut rows = Vec::new();
    for (ni, &n) in config.n_grid.iter().enumerate() {
        if n < 2 {
            return Err(Error::domain(
                "compare_methods",
                format!("n = {n} must be >= 2"),
            ));
        }
        let outcomes: Vec<TrialOutcome> = run_indexed(config.threads, config.runs, |r| {
            let mut rng = stream_rng(config.seed, ni as u32, r as u32);
            let length = draw_scale(lo, hi, &mut rng);
            let uniform = sample_uniform(n, 0.0, length, &mut rng);
            let sigma = draw_scale(lo, hi, &mut rng);
            let gaussian = sample_gaussian(n, 0.0, sigma, &mut rng);
            let samples = [uniform, gaussian];
            COMPARED_METHODS.map(|method| {
                [0, 1].map(|mi| {
                    let sample = samples[mi].as_ref().ok()?;
                    let v = classify(method, sample, &shrink_cfg).ok()?;
                    Some((v.is_gaussian(), v.gaussian_score()))
                })
            })
        });
        for (mi, &method) in COMPARED_METHODS.iter().enumerate() {
            let mut predicted = Vec::new();
            let mut scores = Vec::new();
            let mut truth = Vec::new();
            for trial in &outcomes {
                for (model, outcome) in trial[mi].iter().enumerate() {
                    if let Some((is_gauss, score)) = outcome {
                        predicted.push(if *is_gauss { 1.0 } else { 0.0 });
                        scores.push(*score);
                        truth.push(model == 1);
                    }
                }
            }
            let correct = predicted
                .iter()
                .zip(&truth)
                .filter(|(p, t)| (**p == 1.0) == **t)
                .count();
            rows.push(ComparisonRow {
                method,
                n,
                trials: truth.len(),
                excluded: 2 * config.runs - truth.len(),
                accuracy: correct as f64 / truth.len() as f64,
                auc: roc_auc(&predicted, &truth),
                auc_score: roc_auc(&scores, &truth),
            });
        }
    }
    let summary = COMPARED_METHODS
        .iter()
        .map(|&method| {
            let mine: Vec<&ComparisonRow> = rows.iter().filter(|r| r.method == method).collect();
            let mean = |f: fn(&ComparisonRow) -> f64| {
                mine.iter().map(|r| f(r)).sum::<f64>() / mine.len() as f64
            };
            MethodSummary {
                method,
                mean_accuracy: mean(|r| r.accuracy),
                mean_auc: mean(|r| r.auc),
                mean_auc_score: mean(|r| r.auc_score),
                excluded: mine.iter().map(|r| r.excluded).sum(),
            }
        })
        .collect();
    Ok(ComparisonReport {
        runs_per_model: config.runs,
        depth,
        alpha: config.alpha,
        param_range: config.param_range,
        rows,
        summary,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Table1Row {
    pub n: usize,
    pub k: usize,
    pub depth: usize,
    /// Harmonic-corrected approximation u_k.
    pub harmonic: f64,
    /// Alternating-sum approximation v_k.
    pub alternating: f64,
    pub abs_diff: f64,
    pub mc_mean: f64,
    pub mc_std_err: f64,
}

/// u_k and v_k for `k = n − K`, `K ∈ p_grid`, with a Monte Carlo estimate
/// of `E[X_(k)]` for `N(0, 1)`.
pub fn run_table1(config: &ExperimentConfig) -> Result<Vec<Table1Row>> {
    config.validate()?;
    let mut rows = Vec::new();
    for (ni, &n) in config.n_grid.iter().enumerate() {
        if config.p_grid.iter().any(|&d| d >= n) {
            return Err(Error::domain(
                "run_table1",
                format!("tail depth must be < n = {n}"),
            ));
        }
        let draws = run_indexed(config.threads, config.runs, |r| {
            let mut rng = stream_rng(config.seed, ni as u32, r as u32);
            let sample = sample_gaussian(n, 0.0, 1.0, &mut rng).ok()?;
            Some(
                config
                    .p_grid
                    .iter()
                    .map(|&d| sample.order_stat(n - d))
                    .collect::<Vec<f64>>(),
            )
        });
        let draws: Vec<Vec<f64>> = draws.into_iter().flatten().collect();
        for (di, &depth) in config.p_grid.iter().enumerate() {
            let k = n - depth;
            let harmonic = gaussian_expected_order_stat_harmonic(n, k, 1.0)?;
            let alternating = gaussian_expected_order_stat_sum(n, k, 1.0)?;
            let values: Vec<f64> = draws.iter().map(|d| d[di]).collect();
            let (mc_mean, mc_std) = mean_std(&values);
            rows.push(Table1Row {
                n,
                k,
                depth,
                harmonic,
                alternating,
                abs_diff: (harmonic - alternating).abs(),
                mc_mean,
                mc_std_err: mc_std / (values.len() as f64).sqrt(),
            });
        }
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(mut c: ExperimentConfig, runs: usize) -> ExperimentConfig {
        c.runs = runs;
        c
    }

    #[test]
    fn curve_rows_cover_the_grid() {
        let rows =
            run_shrinkage_curves(&small(ExperimentConfig::shrinkage_curves(5), 200)).unwrap();
        assert_eq!(rows.len(), 2 * 6);
        assert!(rows.iter().all(|r| r.trials + r.excluded == 200));
        let uniform: Vec<f64> = rows
            .iter()
            .filter(|r| r.model == CurveModel::Uniform)
            .map(|r| r.theory)
            .collect();
        assert!(uniform.windows(2).all(|w| w[1] < w[0]));
    }

    #[test]
    fn max_rows_grow_with_n() {
        let mut c = small(ExperimentConfig::max_statistics(2), 300);
        c.n_grid = vec![10, 100, 1000];
        let rows = run_max_statistics(&c).unwrap();
        assert_eq!(rows.len(), 3);
        assert!(rows
            .windows(2)
            .all(|w| w[1].mean_max_abs >= w[0].mean_max_abs));
        assert!(rows.iter().all(|r| r.mean_max_abs >= r.mean_max));
    }

    #[test]
    fn calibration_rows() {
        let mut c = small(ExperimentConfig::calibration(3), 50);
        c.p_grid = vec![1, 6, 15];
        let report = calibrate_p(&c).unwrap();
        assert_eq!(report.rows.len(), 3);
        for row in &report.rows {
            assert_eq!(row.trials + row.excluded, 100);
            assert!((0.0..=1.0).contains(&row.accuracy));
        }
    }

    #[test]
    fn comparison_rows() {
        let mut c = small(ExperimentConfig::comparison(4), 20);
        c.n_grid = vec![15, 40];
        let report = compare_methods(&c).unwrap();
        assert_eq!(report.rows.len(), 2 * COMPARED_METHODS.len());
        assert_eq!(report.summary.len(), COMPARED_METHODS.len());
        for r in &report.rows {
            assert_eq!(r.trials + r.excluded, 40);
            assert!((0.0..=1.0).contains(&r.accuracy));
            assert!((0.0..=1.0).contains(&r.auc));
        }
        // hybrid equals lrt at n = 15 and shrinkage at n = 40
        let at = |m, n| report.row(m, n).unwrap().accuracy;
        assert_eq!(at(Method::Hybrid, 15), at(Method::Lrt, 15));
        assert_eq!(at(Method::Hybrid, 40), at(Method::Shrinkage, 40));
    }

    #[test]
    fn table1_rows() {
        let c = small(ExperimentConfig::table1(9), 100);
        let rows = run_table1(&c).unwrap();
        assert_eq!(rows.len(), 10);
        assert!(rows[0].abs_diff < 1e-12);
        assert!(rows.iter().all(|r| r.mc_std_err > 0.0));
    }
}
