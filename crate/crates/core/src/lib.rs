//! Uniform-versus-Gaussian model selection for one-dimensional samples.
//!
//! The crate decides whether an i.i.d. sample of real numbers looks more
//! like a uniform or a Gaussian law. Three classifiers are provided:
//!
//! * a geometric test that watches how the sample span contracts as extreme
//!   points are trimmed from both ends ([`shrinkage`]),
//! * the classical maximum-likelihood ratio test ([`likelihood`]),
//! * a hybrid rule that picks between the two by sample size.
//!
//! Around them sit the closed-form order-statistic expectations the
//! shrinkage curves are built from ([`order_stats`]), a reproducible Monte
//! Carlo lab ([`simlab`]), a one-dimensional DBSCAN with a synthetic cluster
//! validation experiment ([`cluster1d`]), and the command-line layer
//! ([`cli`]).
//!
//! ```
//! use span_shrink::{classify, Method, ShrinkageConfig, SortedSample, ModelLabel};
//!
//! let sample = SortedSample::new((0..40).map(|i| i as f64 / 39.0).collect()).unwrap();
//! let verdict = classify(Method::Shrinkage, &sample, &ShrinkageConfig::default()).unwrap();
//! assert_eq!(verdict.label, ModelLabel::Uniform);
//! ```

// `!(x > 0.0)` is used on purpose so NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod cluster1d;
pub mod error;
pub mod likelihood;
pub mod metrics;
pub mod order_stats;
pub mod sample;
pub mod shrinkage;
pub mod simlab;
pub mod specfun;
pub mod verdict;

pub use error::{Error, Result};
pub use likelihood::{classify_hybrid, classify_lrt, fit_gaussian, fit_uniform, MleFit};
pub use sample::SortedSample;
pub use shrinkage::{
    classify_shrinkage, empirical_profile, gaussian_curve, uniform_curve, ModelCurve,
    ShrinkageConfig, ShrinkageProfile,
};
pub use verdict::{classify, Diagnostics, Method, ModelLabel, Verdict};

/// Crate version, recorded in run manifests.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
