use crate::error::{Error, Result};

/// An ascending, finite sample with at least two observations.
#[derive(Debug, Clone, PartialEq)]
pub struct SortedSample {
    values: Vec<f64>,
}

impl SortedSample {
    /// Sorts `values` and checks that every entry is finite.
    pub fn new(mut values: Vec<f64>) -> Result<Self> {
        if let Some(index) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite { index });
        }
        if values.len() < 2 {
            return Err(Error::InsufficientSample {
                n: values.len(),
                required: 2,
            });
        }
        values.sort_by(f64::total_cmp);
        Ok(SortedSample { values })
    }

    pub fn from_slice(values: &[f64]) -> Result<Self> {
        Self::new(values.to_vec())
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// The `k`-th order statistic, 1-based (`order_stat(1)` is the minimum).
    pub fn order_stat(&self, k: usize) -> f64 {
        self.values[k - 1]
    }

    pub fn min(&self) -> f64 {
        self.values[0]
    }

    pub fn max(&self) -> f64 {
        self.values[self.values.len() - 1]
    }

    pub fn range(&self) -> f64 {
        self.max() - self.min()
    }

    pub fn mean(&self) -> f64 {
        self.values.iter().sum::<f64>() / self.len() as f64
    }

    /// Biased (1/n) variance about the sample mean.
    pub fn variance_mle(&self) -> f64 {
        let mean = self.mean();
        self.values.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / self.len() as f64
    }

    /// Number of distinct values.
    pub fn distinct(&self) -> usize {
        1 + self.values.windows(2).filter(|w| w[1] > w[0]).count()
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.values
    }
}
