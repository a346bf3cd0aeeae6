//! Monte Carlo maxima of Gaussian samples against the two estimators.

use span_shrink::simlab::{self, ExperimentConfig};

fn main() -> Result<(), span_shrink::Error> {
    let rows = simlab::run_max_statistics(&ExperimentConfig::max_statistics(1))?;
    println!(
        "{:>6} {:>10} {:>10} {:>10}",
        "n", "mc", "estimator", "refined"
    );
    for r in rows {
        println!(
            "{:>6} {:>10.4} {:>10.4} {:>10.4}",
            r.n, r.mean_max_abs, r.estimator, r.refined
        );
    }
    Ok(())
}
