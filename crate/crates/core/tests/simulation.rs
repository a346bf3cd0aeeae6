use span_shrink::cluster1d::{
    generate_dataset, run_cluster_experiment, ClusterExperimentConfig, Origin, SyntheticParams,
};
use span_shrink::shrinkage::CurveModel;
use span_shrink::simlab::{self, stream_rng, ExperimentConfig};
use span_shrink::Method;

#[test]
fn anchor_points_spread_with_sigma() {
    let params = SyntheticParams {
        n_points: 100_000,
        ..SyntheticParams::default()
    };
    let data = generate_dataset(&params, &mut stream_rng(1, 0, 0)).unwrap();
    for a in 0..params.n_anchors {
        let offsets: Vec<f64> = data
            .points
            .iter()
            .zip(&data.anchor_of)
            .filter(|(_, &k)| k == Some(a))
            .map(|(x, _)| x - data.anchors[a])
            .collect();
        let (_, std) = simlab::mean_std(&offsets);
        assert!(
            (std / params.sigma - 1.0).abs() < 0.15,
            "anchor {a}: std {std}"
        );
    }
    let background = data
        .origin
        .iter()
        .filter(|o| **o == Origin::Background)
        .count();
    assert_eq!(background, 50_000);
}

#[test]
fn nearly_every_run_has_a_significant_cluster() {
    let report = run_cluster_experiment(&ClusterExperimentConfig::standard(17)).unwrap();
    assert_eq!(report.runs, 100);
    assert!(
        report.runs_with_significant >= 95,
        "{}",
        report.runs_with_significant
    );
    assert!(report.balanced_accuracy_hybrid >= report.balanced_accuracy_lrt);
}

#[test]
fn curve_experiment_is_thread_count_independent() {
    let base = ExperimentConfig {
        runs: 500,
        ..ExperimentConfig::shrinkage_curves(3)
    };
    let one = simlab::run_shrinkage_curves(&ExperimentConfig {
        threads: Some(1),
        ..base.clone()
    })
    .unwrap();
    let many = simlab::run_shrinkage_curves(&ExperimentConfig {
        threads: Some(4),
        ..base
    })
    .unwrap();
    assert_eq!(one, many);
    assert!(one.iter().any(|r| r.model == CurveModel::Gaussian));
}

#[test]
fn lrt_wins_at_large_n_and_hybrid_keeps_up_at_moderate_n() {
    let config = ExperimentConfig {
        runs: 400,
        n_grid: vec![40, 200],
        ..ExperimentConfig::comparison(5)
    };
    let report = simlab::compare_methods(&config).unwrap();
    let acc = |m, n| report.row(m, n).unwrap().accuracy;
    assert!(acc(Method::Lrt, 200) > acc(Method::Shrinkage, 200));
    assert!(acc(Method::Hybrid, 40) >= acc(Method::Lrt, 40) - 0.03);
}

#[test]
fn max_statistics_grow_with_n() {
    let config = ExperimentConfig {
        runs: 2000,
        ..ExperimentConfig::max_statistics(8)
    };
    let rows = simlab::run_max_statistics(&config).unwrap();
    for w in rows.windows(2) {
        assert!(w[1].mean_max_abs > w[0].mean_max_abs);
        assert!(w[0].mean_max_abs >= w[0].mean_max);
    }
}
