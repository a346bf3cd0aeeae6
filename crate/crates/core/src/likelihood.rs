//! Maximum-likelihood fits, the likelihood-ratio classifier, and the hybrid
//! rule that routes moderate sample sizes to the shrinkage test.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sample::SortedSample;
use crate::shrinkage::{classify_shrinkage, ShrinkageConfig};
use crate::verdict::{Diagnostics, Method, ModelLabel, Verdict};

/// Sample sizes in `(HYBRID_LOWER, HYBRID_UPPER]` go to the shrinkage test.
pub const HYBRID_LOWER: usize = 20;
pub const HYBRID_UPPER: usize = 60;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "lowercase")]
pub enum MleFit {
    Uniform { a: f64, b: f64, loglik: f64 },
    Gaussian { mu: f64, variance: f64, loglik: f64 },
}

impl MleFit {
    pub fn loglik(&self) -> f64 {
        match *self {
            MleFit::Uniform { loglik, .. } | MleFit::Gaussian { loglik, .. } => loglik,
        }
    }
}

/// `â = X_(1)`, `b̂ = X_(n)`, `ln L = −n ln(b̂ − â)`.
pub fn fit_uniform(sample: &SortedSample) -> Result<MleFit> {
    let range = sample.range();
    if range <= 0.0 {
        return Err(Error::DegenerateSpan { step: 0 });
    }
    Ok(MleFit::Uniform {
        a: sample.min(),
        b: sample.max(),
        loglik: -(sample.len() as f64) * range.ln(),
    })
}

/// Sample mean and biased variance; `ln L = −(n/2) ln(2π σ̂²) − n/2`.
pub fn fit_gaussian(sample: &SortedSample) -> Result<MleFit> {
    let variance = sample.variance_mle();
    if variance <= 0.0 {
        return Err(Error::DegenerateSpan { step: 0 });
    }
    let n = sample.len() as f64;
    Ok(MleFit::Gaussian {
        mu: sample.mean(),
        variance,
        loglik: -0.5 * n * (2.0 * PI * variance).ln() - 0.5 * n,
    })
}

/// Posterior probability of the winner under equal priors,
/// `1 / (1 + exp(lnL_lose − lnL_win))`.
fn posterior_of_winner(loglik_win: f64, loglik_lose: f64) -> f64 {
    1.0 / (1.0 + (loglik_lose - loglik_win).exp())
}

fn decide(loglik_uniform: f64, loglik_gaussian: f64) -> (ModelLabel, f64) {
    if loglik_uniform > loglik_gaussian {
        (
            ModelLabel::Uniform,
            posterior_of_winner(loglik_uniform, loglik_gaussian),
        )
    } else {
        (
            ModelLabel::Gaussian,
            posterior_of_winner(loglik_gaussian, loglik_uniform),
        )
    }
}

/// Uniform iff `ln L_U > ln L_G`; otherwise Gaussian.
pub fn classify_lrt(sample: &SortedSample) -> Result<Verdict> {
    let loglik_uniform = fit_uniform(sample)?.loglik();
    let loglik_gaussian = fit_gaussian(sample)?.loglik();
    let (label, confidence) = decide(loglik_uniform, loglik_gaussian);
    Ok(Verdict {
        label,
        confidence,
        method: Method::Lrt,
        n: sample.len(),
        diagnostics: Diagnostics::Likelihood {
            loglik_uniform,
            loglik_gaussian,
        },
    })
}

/// True when the hybrid rule sends a sample of size `n` to the shrinkage
/// test.
pub fn hybrid_prefers_shrinkage(n: usize) -> bool {
    n > HYBRID_LOWER && n <= HYBRID_UPPER
}

/// Shrinkage test for `20 < n ≤ 60`, likelihood ratio otherwise.
///
/// When the shrinkage test is selected but cannot run on the sample (ties
/// at the extremes, depth too large for `n`), the likelihood ratio is used
/// instead and the reason is kept in the diagnostics.
pub fn classify_hybrid(sample: &SortedSample, config: &ShrinkageConfig) -> Result<Verdict> {
    let n = sample.len();
    let low_n_warning = n <= HYBRID_LOWER;
    let (inner, fallback) = if hybrid_prefers_shrinkage(n) {
        match classify_shrinkage(sample, config) {
            Ok(v) => (v, None),
            Err(e) => (classify_lrt(sample)?, Some(e.to_string())),
        }
    } else {
        (classify_lrt(sample)?, None)
    };
    Ok(Verdict {
        label: inner.label,
        confidence: inner.confidence,
        method: Method::Hybrid,
        n,
        diagnostics: Diagnostics::Hybrid {
            delegate: inner.method,
            fallback,
            low_n_warning,
            inner: Box::new(inner.diagnostics),
        },
    })
}
