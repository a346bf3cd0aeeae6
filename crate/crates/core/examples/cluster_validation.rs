//! DBSCAN on synthetic anchored data, then classify each cluster.

use span_shrink::cluster1d::{
    dbscan_1d, generate_dataset, run_cluster_experiment, validate_clusters, ClusterExperimentConfig,
};
use span_shrink::simlab::stream_rng;
use span_shrink::Method;

fn main() -> Result<(), span_shrink::Error> {
    let config = ClusterExperimentConfig::standard(1);

    let data = generate_dataset(&config.params, &mut stream_rng(config.seed, 0, 0))?;
    let run = dbscan_1d(&data.points, config.epsilon, config.min_samples)?;
    let outcome = validate_clusters(&data, &run, Method::Hybrid, &config.shrinkage)?;
    println!(
        "one dataset: {} clusters, {} noise points",
        run.clusters.len(),
        run.noise_count()
    );
    for rec in outcome.records.iter().take(8) {
        println!(
            "  cluster {:>2}: size {:>3}, {:<8} truth {}",
            rec.cluster_id,
            rec.size,
            rec.label.map_or("-", |l| l.as_str()),
            rec.ground_truth
                .map_or("-", |g| if g { "significant" } else { "background" })
        );
    }

    let report = run_cluster_experiment(&config)?;
    println!(
        "{} runs: balanced accuracy hybrid {:.3}, lrt {:.3}",
        report.runs, report.balanced_accuracy_hybrid, report.balanced_accuracy_lrt
    );
    Ok(())
}
