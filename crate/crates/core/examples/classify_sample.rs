//! Classify one sample with all three methods.
//!
//! cargo run --example classify_sample [uniform|gaussian] [n]

use span_shrink::simlab::{sample_gaussian, sample_uniform, stream_rng};
use span_shrink::{classify, Diagnostics, Method, ShrinkageConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = std::env::args().collect();
    let law = args.get(1).map(String::as_str).unwrap_or("gaussian");
    let n: usize = args.get(2).map(|s| s.parse()).transpose()?.unwrap_or(50);

    let mut rng = stream_rng(7, 0, 0);
    let sample = match law {
        "uniform" => sample_uniform(n, -3.0, 5.0, &mut rng)?,
        _ => sample_gaussian(n, 10.0, 2.0, &mut rng)?,
    };
    println!("{n} draws from a {law} law, range {:.3}", sample.range());

    let config = ShrinkageConfig::default();
    for method in [Method::Shrinkage, Method::Lrt, Method::Hybrid] {
        match classify(method, &sample, &config) {
            Ok(v) => {
                println!(
                    "{:>9}: {:<8} confidence {:.3}",
                    method.as_str(),
                    v.label.as_str(),
                    v.confidence
                );
                if let Diagnostics::Hybrid {
                    delegate,
                    low_n_warning,
                    ..
                } = &v.diagnostics
                {
                    println!(
                        "           delegated to {}, low-n warning: {low_n_warning}",
                        delegate.as_str()
                    );
                }
            }
            Err(e) => println!("{:>9}: {e}", method.as_str()),
        }
    }
    Ok(())
}
