//! Accuracy and AUC of the three classifiers across sample sizes.

use span_shrink::simlab::{self, ExperimentConfig};

fn main() -> Result<(), span_shrink::Error> {
    let report = simlab::compare_methods(&ExperimentConfig::comparison(1))?;
    println!(
        "{:>5} {:>10} {:>10} {:>10}",
        "n", "lrt", "shrinkage", "hybrid"
    );
    for &n in &simlab::COMPARISON_N_GRID {
        let acc: Vec<String> = simlab::COMPARED_METHODS
            .iter()
            .map(|&m| {
                format!(
                    "{:>10.3}",
                    report.row(m, n).map_or(f64::NAN, |r| r.accuracy)
                )
            })
            .collect();
        println!("{n:>5} {}", acc.join(" "));
    }
    println!();
    for s in &report.summary {
        println!(
            "{:<9} mean accuracy {:.3}, AUC {:.3}, AUC (soft score) {:.3}",
            s.method.as_str(),
            s.mean_accuracy,
            s.mean_auc,
            s.mean_auc_score
        );
    }
    Ok(())
}
