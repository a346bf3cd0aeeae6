//! Shrinkage accuracy as a function of the trimming depth p.

use span_shrink::simlab::{self, ExperimentConfig};

fn main() -> Result<(), span_shrink::Error> {
    let report = simlab::calibrate_p(&ExperimentConfig::calibration(1))?;
    println!(
        "n = {}, {} samples per model",
        report.n, report.runs_per_model
    );
    for row in &report.rows {
        let bar = "#".repeat((row.accuracy * 50.0).round() as usize);
        println!("p = {:>2}  {:.3}  {bar}", row.depth, row.accuracy);
    }
    Ok(())
}
