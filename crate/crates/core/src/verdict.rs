//! Classification outcomes shared by every classifier.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::likelihood::{classify_hybrid, classify_lrt};
use crate::sample::SortedSample;
use crate::shrinkage::{classify_shrinkage, ShrinkageConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModelLabel {
    Uniform,
    Gaussian,
}

impl ModelLabel {
    pub fn as_str(self) -> &'static str {
        match self {
            ModelLabel::Uniform => "uniform",
            ModelLabel::Gaussian => "gaussian",
        }
    }
}

impl std::fmt::Display for ModelLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Which classifier produced a verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Shrinkage,
    Lrt,
    Hybrid,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Shrinkage => "shrinkage",
            Method::Lrt => "lrt",
            Method::Hybrid => "hybrid",
        }
    }
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// The numbers behind a verdict.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Diagnostics {
    Shrinkage {
        depth: usize,
        alpha: f64,
        distance_uniform: f64,
        distance_gaussian: f64,
        diameters: Vec<f64>,
        ratios: Vec<f64>,
        uniform_curve: Vec<f64>,
        gaussian_curve: Vec<f64>,
    },
    Likelihood {
        loglik_uniform: f64,
        loglik_gaussian: f64,
    },
    Hybrid {
        delegate: Method,
        /// Set when the shrinkage test was selected but could not run.
        fallback: Option<String>,
        /// Set for n ≤ 20, where neither test is reliable.
        low_n_warning: bool,
        inner: Box<Diagnostics>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub label: ModelLabel,
    /// Confidence in the chosen label, in [0, 1].
    pub confidence: f64,
    pub method: Method,
    pub n: usize,
    pub diagnostics: Diagnostics,
}

impl Verdict {
    /// Confidence that the sample is Gaussian, whichever label won.
    pub fn gaussian_score(&self) -> f64 {
        match self.label {
            ModelLabel::Gaussian => self.confidence,
            ModelLabel::Uniform => 1.0 - self.confidence,
        }
    }

    pub fn is_gaussian(&self) -> bool {
        self.label == ModelLabel::Gaussian
    }
}

/// Runs the selected classifier on `sample`.
pub fn classify(
    method: Method,
    sample: &SortedSample,
    config: &ShrinkageConfig,
) -> Result<Verdict> {
    match method {
        Method::Shrinkage => classify_shrinkage(sample, config),
        Method::Lrt => classify_lrt(sample),
        Method::Hybrid => classify_hybrid(sample, config),
    }
}
