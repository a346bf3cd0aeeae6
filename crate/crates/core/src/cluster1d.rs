//! One-dimensional DBSCAN and the synthetic cluster-validation experiment.
//!
//! Synthetic datasets mix Gaussian bumps around random anchors with a
//! uniform background. After clustering, each cluster is tested for
//! Gaussian shape; a cluster counts as significant when a strict majority of
//! its members came from an anchor.

use std::io;
use std::path::Path;

use rand::Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::metrics::Confusion;
use crate::sample::SortedSample;
use crate::shrinkage::ShrinkageConfig;
use crate::simlab::{run_indexed, stream_rng};
use crate::verdict::{classify, Method, ModelLabel};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SyntheticParams {
    /// Width W of the segment [0, W].
    pub width: f64,
    pub n_anchors: usize,
    pub n_points: usize,
    pub sigma: f64,
    pub gaussian_fraction: f64,
}

impl Default for SyntheticParams {
    fn default() -> Self {
        SyntheticParams {
            width: 10_000.0,
            n_anchors: 10,
            n_points: 1000,
            sigma: 20.0,
            gaussian_fraction: 0.5,
        }
    }
}

impl SyntheticParams {
    pub fn validate(&self) -> Result<()> {
        let bad = |d: String| Err(Error::domain("SyntheticParams", d));
        if !(self.width > 0.0) {
            return bad(format!("width {} must be > 0", self.width));
        }
        if self.n_anchors == 0 {
            return bad("n_anchors must be >= 1".into());
        }
        if self.n_points < 2 {
            return bad("n_points must be >= 2".into());
        }
        if !(self.sigma > 0.0) {
            return bad(format!("sigma {} must be > 0", self.sigma));
        }
        if !(0.0..=1.0).contains(&self.gaussian_fraction) {
            return bad(format!(
                "gaussian_fraction {} outside [0, 1]",
                self.gaussian_fraction
            ));
        }
        Ok(())
    }

    pub fn gaussian_count(&self) -> usize {
        (self.gaussian_fraction * self.n_points as f64).round() as usize
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Origin {
    Anchor,
    Background,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SyntheticDataset {
    pub points: Vec<f64>,
    pub origin: Vec<Origin>,
    pub anchors: Vec<f64>,
    /// Index into `anchors` for anchor-origin points.
    pub anchor_of: Vec<Option<usize>>,
    pub params: SyntheticParams,
}

/// Anchors uniform on `[0, W]`; `round(fraction · n_points)` points from
/// `N(anchor, σ²)` with a uniformly chosen anchor each, the rest uniform on
/// `[0, W]`. Gaussian draws that leave the segment are kept.
pub fn generate_dataset<R: Rng + ?Sized>(
    params: &SyntheticParams,
    rng: &mut R,
) -> Result<SyntheticDataset> {
    params.validate()?;
    let anchors: Vec<f64> = (0..params.n_anchors)
        .map(|_| params.width * rng.random::<f64>())
        .collect();
    let n_gauss = params.gaussian_count();
    let noise = Normal::new(0.0, params.sigma).expect("sigma validated");

    let mut points = Vec::with_capacity(params.n_points);
    let mut origin = Vec::with_capacity(params.n_points);
    let mut anchor_of = Vec::with_capacity(params.n_points);
    for _ in 0..n_gauss {
        let a = rng.random_range(0..params.n_anchors);
        points.push(anchors[a] + noise.sample(rng));
        origin.push(Origin::Anchor);
        anchor_of.push(Some(a));
    }
    for _ in n_gauss..params.n_points {
        points.push(params.width * rng.random::<f64>());
        origin.push(Origin::Background);
        anchor_of.push(None);
    }
    Ok(SyntheticDataset {
        points,
        origin,
        anchors,
        anchor_of,
        params: *params,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClusterRun {
    /// Cluster id per input point, `None` for noise.
    pub labels: Vec<Option<usize>>,
    /// Member indices per cluster, ascending by coordinate.
    pub clusters: Vec<Vec<usize>>,
    pub epsilon: f64,
    pub min_samples: usize,
}

impl ClusterRun {
    pub fn noise_count(&self) -> usize {
        self.labels.iter().filter(|l| l.is_none()).count()
    }

    pub fn members<'a>(
        &'a self,
        points: &'a [f64],
        cluster: usize,
    ) -> impl Iterator<Item = f64> + 'a {
        self.clusters[cluster].iter().map(move |&i| points[i])
    }
}

/// DBSCAN on the real line.
///
/// A point is core when at least `min_samples` points, itself included, lie
/// within distance `epsilon`. In sorted order two core points are
/// density-connected exactly when every gap between consecutive core points
/// between them is at most `epsilon`, so clusters are found in one sweep.
/// A border point joins the cluster of its leftmost core neighbour; cluster
/// ids increase with position.
pub fn dbscan_1d(points: &[f64], epsilon: f64, min_samples: usize) -> Result<ClusterRun> {
    if !(epsilon > 0.0) {
        return Err(Error::domain(
            "dbscan_1d",
            format!("epsilon = {epsilon} must be > 0"),
        ));
    }
    if min_samples == 0 {
        return Err(Error::domain("dbscan_1d", "min_samples must be >= 1"));
    }
    if let Some(index) = points.iter().position(|p| !p.is_finite()) {
        return Err(Error::NonFinite { index });
    }
    let n = points.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| points[a].total_cmp(&points[b]).then(a.cmp(&b)));
    let xs: Vec<f64> = order.iter().map(|&i| points[i]).collect();

    // neighbourhood sizes via a sliding window over the sorted values
    let mut is_core = vec![false; n];
    let (mut lo, mut hi) = (0usize, 0usize);
    for i in 0..n {
        while xs[i] - xs[lo] > epsilon {
            lo += 1;
        }
        if hi < i {
            hi = i;
        }
        while hi + 1 < n && xs[hi + 1] - xs[i] <= epsilon {
            hi += 1;
        }
        is_core[i] = hi - lo + 1 >= min_samples;
    }

    // clusters of core points
    let mut sorted_label: Vec<Option<usize>> = vec![None; n];
    let mut last_core: Option<usize> = None;
    let mut next_id = 0;
    for i in 0..n {
        if !is_core[i] {
            continue;
        }
        let id = match last_core {
            Some(j) if xs[i] - xs[j] <= epsilon => sorted_label[j].expect("core labelled"),
            _ => {
                next_id += 1;
                next_id - 1
            }
        };
        sorted_label[i] = Some(id);
        last_core = Some(i);
    }

    // border points: nearest core to the left within epsilon wins, else the
    // nearest core to the right
    let mut prev_core: Option<usize> = None;
    let mut left_claim = vec![None; n];
    for i in 0..n {
        if is_core[i] {
            prev_core = Some(i);
        } else if let Some(j) = prev_core {
            if xs[i] - xs[j] <= epsilon {
                left_claim[i] = sorted_label[j];
            }
        }
    }
    let mut next_core: Option<usize> = None;
    for i in (0..n).rev() {
        if is_core[i] {
            next_core = Some(i);
            continue;
        }
        sorted_label[i] = left_claim[i].or_else(|| {
            next_core
                .filter(|&j| xs[j] - xs[i] <= epsilon)
                .and_then(|j| sorted_label[j])
        });
    }

    let mut labels = vec![None; n];
    let mut clusters = vec![Vec::new(); next_id];
    for (pos, &orig) in order.iter().enumerate() {
        labels[orig] = sorted_label[pos];
        if let Some(id) = sorted_label[pos] {
            clusters[id].push(orig);
        }
    }
    Ok(ClusterRun {
        labels,
        clusters,
        epsilon,
        min_samples,
    })
}

/// Per-cluster ground truth: true iff anchor-origin members are a strict
/// majority.
pub fn label_significant(run: &ClusterRun, dataset: &SyntheticDataset) -> Result<Vec<bool>> {
    if run.labels.len() != dataset.points.len() || dataset.origin.len() != dataset.points.len() {
        return Err(Error::Mismatch(format!(
            "run has {} labels, dataset has {} points",
            run.labels.len(),
            dataset.points.len()
        )));
    }
    Ok(run
        .clusters
        .iter()
        .map(|members| {
            let anchored = members
                .iter()
                .filter(|&&i| dataset.origin[i] == Origin::Anchor)
                .count();
            2 * anchored > members.len()
        })
        .collect())
}

/// One scored (or skipped) cluster.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClusterRecord {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub run: Option<usize>,
    pub cluster_id: usize,
    pub size: usize,
    pub label: Option<ModelLabel>,
    pub confidence: Option<f64>,
    pub method: Method,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ground_truth: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValidationOutcome {
    pub records: Vec<ClusterRecord>,
    pub confusion: Confusion,
    /// Clusters with fewer than two distinct values, or on which the
    /// classifier failed.
    pub excluded: usize,
}

impl ValidationOutcome {
    pub fn balanced_accuracy(&self) -> f64 {
        self.confusion.balanced_accuracy()
    }
}

/// Classifies every cluster's member coordinates. A cluster is predicted
/// significant when the verdict is Gaussian. Without ground truth (`None`)
/// the confusion matrix stays empty.
pub fn classify_clusters(
    points: &[f64],
    run: &ClusterRun,
    truth: Option<&[bool]>,
    method: Method,
    config: &ShrinkageConfig,
) -> Result<ValidationOutcome> {
    if run.labels.len() != points.len() {
        return Err(Error::Mismatch(format!(
            "run has {} labels, {} points given",
            run.labels.len(),
            points.len()
        )));
    }
    let mut records = Vec::with_capacity(run.clusters.len());
    let mut confusion = Confusion::default();
    let mut excluded = 0;
    for (id, members) in run.clusters.iter().enumerate() {
        let ground_truth = truth.map(|t| t[id]);
        let verdict = SortedSample::new(run.members(points, id).collect())
            .ok()
            .filter(|s| s.distinct() >= 2)
            .and_then(|s| classify(method, &s, config).ok());
        match &verdict {
            Some(v) => {
                if let Some(actual) = ground_truth {
                    confusion.record(v.is_gaussian(), actual);
                }
            }
            None => excluded += 1,
        }
        records.push(ClusterRecord {
            run: None,
            cluster_id: id,
            size: members.len(),
            label: verdict.as_ref().map(|v| v.label),
            confidence: verdict.as_ref().map(|v| v.confidence),
            method,
            ground_truth,
        });
    }
    Ok(ValidationOutcome {
        records,
        confusion,
        excluded,
    })
}

/// Scores each cluster of `run` against its significance label.
pub fn validate_clusters(
    dataset: &SyntheticDataset,
    run: &ClusterRun,
    method: Method,
    config: &ShrinkageConfig,
) -> Result<ValidationOutcome> {
    let truth = label_significant(run, dataset)?;
    classify_clusters(&dataset.points, run, Some(&truth), method, config)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClusterExperimentConfig {
    pub seed: u64,
    pub runs: usize,
    pub params: SyntheticParams,
    pub epsilon: f64,
    pub min_samples: usize,
    pub shrinkage: ShrinkageConfig,
    #[serde(skip)]
    pub threads: Option<usize>,
}

impl ClusterExperimentConfig {
    /// 100 datasets, W = 10⁴, 10 anchors, 1000 points, σ = 20, ε = 20,
    /// min_samples = 7.
    pub fn standard(seed: u64) -> Self {
        ClusterExperimentConfig {
            seed,
            runs: 100,
            params: SyntheticParams::default(),
            epsilon: 20.0,
            min_samples: 7,
            shrinkage: ShrinkageConfig::default(),
            threads: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClusterExperimentReport {
    pub runs: usize,
    pub clusters_total: usize,
    pub significant_total: usize,
    pub runs_with_significant: usize,
    pub noise_points: usize,
    pub balanced_accuracy_hybrid: f64,
    pub balanced_accuracy_lrt: f64,
    pub confusion_hybrid: Confusion,
    pub confusion_lrt: Confusion,
    pub excluded_hybrid: usize,
    pub excluded_lrt: usize,
    #[serde(skip)]
    pub records: Vec<ClusterRecord>,
}

struct PerRun {
    clusters: usize,
    significant: usize,
    noise: usize,
    hybrid: ValidationOutcome,
    lrt: ValidationOutcome,
}

/// Generates `runs` datasets, clusters each one, and scores the hybrid rule
/// and the likelihood-ratio test against the significance labels. Counts
/// are pooled over all clusters of all runs.
pub fn run_cluster_experiment(config: &ClusterExperimentConfig) -> Result<ClusterExperimentReport> {
    config.params.validate()?;
    if config.runs == 0 {
        return Err(Error::domain(
            "ClusterExperimentConfig",
            "runs must be >= 1",
        ));
    }
    let per_run: Vec<Result<PerRun>> = run_indexed(config.threads, config.runs, |r| {
        let mut rng = stream_rng(config.seed, 0, r as u32);
        let dataset = generate_dataset(&config.params, &mut rng)?;
        let run = dbscan_1d(&dataset.points, config.epsilon, config.min_samples)?;
        let truth = label_significant(&run, &dataset)?;
        let hybrid = validate_clusters(&dataset, &run, Method::Hybrid, &config.shrinkage)?;
        let lrt = validate_clusters(&dataset, &run, Method::Lrt, &config.shrinkage)?;
        Ok(PerRun {
            clusters: run.clusters.len(),
            significant: truth.iter().filter(|&&t| t).count(),
            noise: run.noise_count(),
            hybrid,
            lrt,
        })
    });

    let mut report = ClusterExperimentReport {
        runs: config.runs,
        clusters_total: 0,
        significant_total: 0,
        runs_with_significant: 0,
        noise_points: 0,
        balanced_accuracy_hybrid: f64::NAN,
        balanced_accuracy_lrt: f64::NAN,
        confusion_hybrid: Confusion::default(),
        confusion_lrt: Confusion::default(),
        excluded_hybrid: 0,
        excluded_lrt: 0,
        records: Vec::new(),
    };
    for (r, outcome) in per_run.into_iter().enumerate() {
        let outcome = outcome?;
        report.clusters_total += outcome.clusters;
        report.significant_total += outcome.significant;
        report.runs_with_significant += usize::from(outcome.significant > 0);
        report.noise_points += outcome.noise;
        report.confusion_hybrid.merge(&outcome.hybrid.confusion);
        report.confusion_lrt.merge(&outcome.lrt.confusion);
        report.excluded_hybrid += outcome.hybrid.excluded;
        report.excluded_lrt += outcome.lrt.excluded;
        for mut rec in outcome
            .hybrid
            .records
            .into_iter()
            .chain(outcome.lrt.records)
        {
            rec.run = Some(r);
            report.records.push(rec);
        }
    }
    report.balanced_accuracy_hybrid = report.confusion_hybrid.balanced_accuracy();
    report.balanced_accuracy_lrt = report.confusion_lrt.balanced_accuracy();
    Ok(report)
}

/// Reads one coordinate per line. A first line that does not parse as a
/// number is taken as a header; blank lines are ignored.
pub fn read_points_csv(path: &Path) -> io::Result<Vec<f64>> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .flexible(true)
        .from_path(path)
        .map_err(io::Error::other)?;
    let mut points = Vec::new();
    for (line, record) in reader.records().enumerate() {
        let record = record.map_err(io::Error::other)?;
        let Some(field) = record.get(0).filter(|f| !f.is_empty()) else {
            continue;
        };
        match field.parse::<f64>() {
            Ok(v) => points.push(v),
            Err(_) if line == 0 => continue,
            Err(e) => {
                return Err(io::Error::new(
                    io::ErrorKind::InvalidData,
                    format!("line {}: {field:?}: {e}", line + 1),
                ))
            }
        }
    }
    Ok(points)
}

/// Writes one coordinate per line under an `x` header.
pub fn write_points_csv(path: &Path, points: &[f64]) -> io::Result<()> {
    let mut text = String::with_capacity(points.len() * 24 + 2);
    text.push_str("x\n");
    for p in points {
        text.push_str(&crate::simlab::output::fmt_real(*p));
        text.push('\n');
    }
    std::fs::write(path, text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_dbscan_by_hand() {
        let run = dbscan_1d(&[0.0, 1.0, 2.0, 100.0], 2.0, 3).unwrap();
        assert_eq!(run.labels, vec![Some(0), Some(0), Some(0), None]);
        assert_eq!(run.clusters, vec![vec![0, 1, 2]]);
        assert_eq!(run.noise_count(), 1);
    }

    #[test]
    fn identical_points_form_one_cluster() {
        let run = dbscan_1d(&[5.0; 9], 0.5, 9).unwrap();
        assert_eq!(run.clusters.len(), 1);
        assert_eq!(run.clusters[0].len(), 9);
        let run = dbscan_1d(&[5.0; 9], 0.5, 10).unwrap();
        assert!(run.clusters.is_empty());
    }

    #[test]
    fn empty_and_invalid_inputs() {
        let run = dbscan_1d(&[], 1.0, 3).unwrap();
        assert!(run.labels.is_empty() && run.clusters.is_empty());
        assert!(dbscan_1d(&[1.0], 0.0, 3).is_err());
        assert!(dbscan_1d(&[1.0], 1.0, 0).is_err());
        assert!(dbscan_1d(&[f64::NAN], 1.0, 1).is_err());
    }

    #[test]
    fn border_point_goes_left() {
        // only 1.0 and 3.0 are core; 2.0 is within reach of both
        let pts = [0.0, 0.5, 1.0, 2.0, 3.0, 3.5, 4.0];
        let run = dbscan_1d(&pts, 1.0, 4).unwrap();
        assert_eq!(run.clusters.len(), 2);
        assert_eq!(run.labels[3], Some(0));
        assert_eq!(run.clusters[1], vec![4, 5, 6]);
    }

    #[test]
    fn significance_majority_is_strict() {
        let mk = |anchored: usize, total: usize| {
            let points: Vec<f64> = (0..total).map(|i| i as f64).collect();
            let origin = (0..total)
                .map(|i| {
                    if i < anchored {
                        Origin::Anchor
                    } else {
                        Origin::Background
                    }
                })
                .collect();
            let dataset = SyntheticDataset {
                points: points.clone(),
                origin,
                anchors: vec![0.0],
                anchor_of: vec![None; total],
                params: SyntheticParams::default(),
            };
            let run = dbscan_1d(&points, 1.0, 1).unwrap();
            label_significant(&run, &dataset).unwrap()[0]
        };
        assert!(mk(4, 7));
        assert!(!mk(4, 8));
    }

    #[test]
    fn dataset_generation_counts() {
        let mut rng = stream_rng(1, 0, 0);
        let d = generate_dataset(&SyntheticParams::default(), &mut rng).unwrap();
        assert_eq!(d.points.len(), 1000);
        assert_eq!(
            d.origin.iter().filter(|o| **o == Origin::Anchor).count(),
            500
        );
        assert!(d.anchors.iter().all(|a| (0.0..=10_000.0).contains(a)));

        let params = SyntheticParams {
            gaussian_fraction: 0.0,
            ..SyntheticParams::default()
        };
        let d = generate_dataset(&params, &mut rng).unwrap();
        assert!(d.origin.iter().all(|o| *o == Origin::Background));

        let bad = SyntheticParams {
            sigma: 0.0,
            ..SyntheticParams::default()
        };
        assert!(generate_dataset(&bad, &mut rng).is_err());
    }

    #[test]
    fn skipped_clusters_are_tallied() {
        let points = [1.0, 1.0, 1.0, 10.0, 10.5, 11.0];
        let run = dbscan_1d(&points, 1.0, 3).unwrap();
        assert_eq!(run.clusters.len(), 2);
        let outcome = classify_clusters(
            &points,
            &run,
            Some(&[true, false]),
            Method::Lrt,
            &ShrinkageConfig::default(),
        )
        .unwrap();
        assert_eq!(outcome.excluded, 1);
        assert_eq!(outcome.confusion.total(), 1);
        assert!(outcome.records[0].label.is_none());
    }

    #[test]
    fn points_csv_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("p.csv");
        write_points_csv(&path, &[1.5, -2.0, 1e-9]).unwrap();
        assert_eq!(read_points_csv(&path).unwrap(), vec![1.5, -2.0, 1e-9]);
        std::fs::write(&path, "1\n\nfoo\n").unwrap();
        assert!(read_points_csv(&path).is_err());
    }
}
