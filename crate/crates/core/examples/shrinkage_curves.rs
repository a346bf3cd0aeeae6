//! Empirical shrinkage ratios against the uniform and Gaussian model curves.

use span_shrink::simlab::{self, ExperimentConfig};

fn main() -> Result<(), span_shrink::Error> {
    let config = ExperimentConfig {
        runs: 2000,
        ..ExperimentConfig::shrinkage_curves(1)
    };
    let rows = simlab::run_shrinkage_curves(&config)?;
    println!(
        "{:<9} {:>4} {:>9} {:>9} {:>9}",
        "model", "step", "mean", "std", "theory"
    );
    for r in &rows {
        println!(
            "{:<9} {:>4} {:>9.5} {:>9.5} {:>9.5}",
            format!("{:?}", r.model).to_lowercase(),
            r.step,
            r.mean,
            r.std,
            r.theory
        );
    }
    Ok(())
}
