//! Diameter-shrinkage statistic and the geometric classifier built on it.
//!
//! Trimming `i` points from each end of a sorted sample leaves the span
//! `D_i = X_(n−i) − X_(i+1)`. The successive ratios `T_i = D_i / D_{i−1}`
//! contract differently for light-tailed (uniform) and Gaussian data. The
//! classifier compares the observed ratios with the expected curve of each
//! model and picks the closer one in Euclidean distance.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sample::SortedSample;
use crate::specfun::harmonic;
use crate::verdict::{Diagnostics, Method, ModelLabel, Verdict};

pub const DEFAULT_DEPTH: usize = 6;
/// Offset subtracted from the Gaussian curve to match simulation at n ≈ 100.
pub const DEFAULT_ALPHA: f64 = 0.03;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ShrinkageConfig {
    /// Trimming depth p.
    pub depth: usize,
    pub alpha: f64,
}

impl Default for ShrinkageConfig {
    fn default() -> Self {
        ShrinkageConfig {
            depth: DEFAULT_DEPTH,
            alpha: DEFAULT_ALPHA,
        }
    }
}

impl ShrinkageConfig {
    pub fn with_depth(depth: usize) -> Self {
        ShrinkageConfig {
            depth,
            ..Self::default()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ShrinkageProfile {
    /// `D_0 ..= D_p`.
    pub diameters: Vec<f64>,
    /// `T_1 ..= T_p`.
    pub ratios: Vec<f64>,
}

impl ShrinkageProfile {
    pub fn depth(&self) -> usize {
        self.ratios.len()
    }
}

fn required_len(depth: usize) -> usize {
    2 * depth + 2
}

fn check_depth(n: usize, depth: usize) -> Result<()> {
    if depth == 0 {
        return Err(Error::domain("shrinkage", "trimming depth must be >= 1"));
    }
    if n < required_len(depth) {
        return Err(Error::InsufficientSample {
            n,
            required: required_len(depth),
        });
    }
    Ok(())
}

/// Trimmed diameters and their successive ratios up to depth `depth`.
pub fn empirical_profile(sample: &SortedSample, depth: usize) -> Result<ShrinkageProfile> {
    let n = sample.len();
    check_depth(n, depth)?;
    let diameters: Vec<f64> = (0..=depth)
        .map(|i| sample.order_stat(n - i) - sample.order_stat(i + 1))
        .collect();
    let mut ratios = Vec::with_capacity(depth);
    for i in 1..=depth {
        if diameters[i - 1] <= 0.0 {
            return Err(Error::DegenerateSpan { step: i - 1 });
        }
        ratios.push(diameters[i] / diameters[i - 1]);
    }
    Ok(ShrinkageProfile { diameters, ratios })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CurveModel {
    Uniform,
    Gaussian,
}

/// Expected shrinkage ratios `E[T_1] ..= E[T_p]` under one model.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelCurve {
    pub model: CurveModel,
    pub n: usize,
    pub alpha: Option<f64>,
    pub expected_ratios: Vec<f64>,
}

impl ModelCurve {
    pub fn depth(&self) -> usize {
        self.expected_ratios.len()
    }

    /// Euclidean distance between the curve and an observed ratio vector.
    pub fn distance(&self, ratios: &[f64]) -> f64 {
        self.expected_ratios
            .iter()
            .zip(ratios)
            .map(|(e, t)| (e - t).powi(2))
            .sum::<f64>()
            .sqrt()
    }
}

/// Uniform curve `(n − 2i − 1)/(n − 2i + 1)`, free of the interval bounds.
pub fn uniform_curve(n: usize, depth: usize) -> Result<ModelCurve> {
    check_depth(n, depth)?;
    let expected_ratios = (1..=depth)
        .map(|i| (n - 2 * i - 1) as f64 / (n - 2 * i + 1) as f64)
        .collect();
    Ok(ModelCurve {
        model: CurveModel::Uniform,
        n,
        alpha: None,
        expected_ratios,
    })
}

/// Gaussian curve `(1 − H_i/(2 ln n)) / (1 − H_{i−1}/(2 ln n)) − α`.
///
/// Mean and scale cancel in the ratio. `alpha = 0` gives the unshifted
/// theoretical curve.
pub fn gaussian_curve(n: usize, depth: usize, alpha: f64) -> Result<ModelCurve> {
    if n < 3 {
        return Err(Error::InsufficientSample { n, required: 3 });
    }
    if depth == 0 {
        return Err(Error::domain(
            "gaussian_curve",
            "trimming depth must be >= 1",
        ));
    }
    let two_ln_n = 2.0 * (n as f64).ln();
    let ratio = harmonic(depth) / two_ln_n;
    if ratio >= 1.0 {
        return Err(Error::ValidityRange { ratio });
    }
    let mut expected_ratios = Vec::with_capacity(depth);
    let mut previous = 1.0;
    for i in 1..=depth {
        let current = 1.0 - harmonic(i) / two_ln_n;
        expected_ratios.push(current / previous - alpha);
        previous = current;
    }
    Ok(ModelCurve {
        model: CurveModel::Gaussian,
        n,
        alpha: Some(alpha),
        expected_ratios,
    })
}

fn decide(d_uniform: f64, d_gaussian: f64) -> (ModelLabel, f64) {
    let (label, d_win) = if d_gaussian < d_uniform {
        (ModelLabel::Gaussian, d_gaussian)
    } else {
        (ModelLabel::Uniform, d_uniform)
    };
    let total = d_uniform + d_gaussian;
    let confidence = if total > 0.0 {
        1.0 - d_win / total
    } else {
        0.5
    };
    (label, confidence)
}

/// Geometric classifier: Gaussian iff the observed ratios are strictly
/// closer to the Gaussian curve; ties go to Uniform.
///
/// Confidence is `1 − d_win / (d_U + d_G)`.
pub fn classify_shrinkage(sample: &SortedSample, config: &ShrinkageConfig) -> Result<Verdict> {
    let n = sample.len();
    let profile = empirical_profile(sample, config.depth)?;
    let uniform = uniform_curve(n, config.depth)?;
    let gaussian = gaussian_curve(n, config.depth, config.alpha)?;
    let d_u = uniform.distance(&profile.ratios);
    let d_g = gaussian.distance(&profile.ratios);

    let (label, confidence) = decide(d_u, d_g);

    Ok(Verdict {
        label,
        confidence,
        method: Method::Shrinkage,
        n,
        diagnostics: Diagnostics::Shrinkage {
            depth: config.depth,
            alpha: config.alpha,
            distance_uniform: d_u,
            distance_gaussian: d_g,
            diameters: profile.diameters,
            ratios: profile.ratios,
            uniform_curve: uniform.expected_ratios,
            gaussian_curve: gaussian.expected_ratios,
        },
    })
}
