use thiserror::Error;

/// Errors raised by the statistical routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error in {op}: {detail}")]
    Domain { op: &'static str, detail: String },

    /// A diameter collapsed to zero before the last trimming step, or the
    /// sample has no spread at all.
    #[error("degenerate span at trimming step {step}")]
    DegenerateSpan { step: usize },

    #[error("insufficient sample: n = {n}, need at least {required}")]
    InsufficientSample { n: usize, required: usize },

    /// The harmonic correction H_m / (2 ln n) left the range where the
    /// Gaussian tail approximation is meaningful.
    #[error("approximation outside its validity range (H/(2 ln n) = {ratio})")]
    ValidityRange { ratio: f64 },

    #[error("non-finite observation at index {index}")]
    NonFinite { index: usize },

    #[error("size mismatch: {0}")]
    Mismatch(String),
}

impl Error {
    pub(crate) fn domain(op: &'static str, detail: impl Into<String>) -> Self {
        Error::Domain {
            op,
            detail: detail.into(),
        }
    }

    /// True for errors caused by the data rather than by the caller's
    /// arguments (ties, zero spread, too few points).
    pub fn is_statistical_degeneracy(&self) -> bool {
        matches!(
            self,
            Error::DegenerateSpan { .. }
                | Error::InsufficientSample { .. }
                | Error::NonFinite { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
