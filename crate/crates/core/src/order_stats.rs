//! Expectations of order statistics, trimmed diameters, extreme values and
//! trimmed-mean shifts under the uniform and Gaussian models.
//!
//! Uniform results are exact. Gaussian results are tail approximations
//! valid for upper ranks with small depth `K = n − k`; lower ranks are
//! obtained only through the reflection `E[X_(k)] = −E[X_(n−k+1)]`.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::specfun::{compensated_sum, erfc, harmonic, ln_factorial};

/// Largest tail depth for which the alternating sum is evaluated.
pub const MAX_ALTERNATING_DEPTH: usize = 30;

/// `U[a, b]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UniformModel {
    pub a: f64,
    pub b: f64,
}

impl UniformModel {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if !(b > a) || !a.is_finite() || !b.is_finite() {
            return Err(Error::domain(
                "UniformModel",
                format!("need a < b, got [{a}, {b}]"),
            ));
        }
        Ok(UniformModel { a, b })
    }

    pub fn length(&self) -> f64 {
        self.b - self.a
    }

    /// `E[X_(k)]` for a sample of size `n`, including the offset `a`.
    pub fn expected_order_stat(&self, n: usize, k: usize) -> Result<f64> {
        Ok(self.a + uniform_expected_order_stat(n, k, self.length())?)
    }
}

/// `N(μ, σ²)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianModel {
    pub mu: f64,
    pub sigma: f64,
}

impl GaussianModel {
    pub fn new(mu: f64, sigma: f64) -> Result<Self> {
        check_sigma("GaussianModel", sigma)?;
        Ok(GaussianModel { mu, sigma })
    }

    /// Harmonic-corrected `E[X_(k)]`, shifted by the mean.
    pub fn expected_order_stat(&self, n: usize, k: usize) -> Result<f64> {
        Ok(self.mu + gaussian_expected_order_stat_harmonic(n, k, self.sigma)?)
    }
}

/// Rank `k` within a sample of size `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OrderIndex {
    n: usize,
    k: usize,
}

impl OrderIndex {
    pub fn new(n: usize, k: usize) -> Result<Self> {
        if k == 0 || k > n {
            return Err(Error::domain(
                "OrderIndex",
                format!("rank k = {k} outside [1, {n}]"),
            ));
        }
        Ok(OrderIndex { n, k })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Tail depth `n − k`.
    pub fn depth(&self) -> usize {
        self.n - self.k
    }

    /// The mirrored rank `n − k + 1`.
    pub fn mirrored(&self) -> OrderIndex {
        OrderIndex {
            n: self.n,
            k: self.n - self.k + 1,
        }
    }

    fn is_lower_half(&self) -> bool {
        2 * self.k <= self.n
    }
}

fn check_sigma(op: &'static str, sigma: f64) -> Result<()> {
    if sigma > 0.0 && sigma.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(op, format!("sigma = {sigma} must be > 0")))
    }
}

fn check_length(op: &'static str, length: f64) -> Result<()> {
    if length > 0.0 && length.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(op, format!("L = {length} must be > 0")))
    }
}

fn check_min_n(op: &'static str, n: usize, min: usize) -> Result<()> {
    if n < min {
        Err(Error::domain(op, format!("n = {n} must be >= {min}")))
    } else {
        Ok(())
    }
}

/// `E[X_(k)] = kL/(n+1)` for `U[0, L]`.
pub fn uniform_expected_order_stat(n: usize, k: usize, length: f64) -> Result<f64> {
    OrderIndex::new(n, k)?;
    check_length("uniform_expected_order_stat", length)?;
    Ok(k as f64 / (n + 1) as f64 * length)
}

/// `E[X_(k)^p] = L^p · k(k+1)…(k+p−1) / ((n+1)…(n+p))` for `U[0, L]`.
pub fn uniform_order_stat_moment(n: usize, k: usize, length: f64, p: u32) -> Result<f64> {
    OrderIndex::new(n, k)?;
    check_length("uniform_order_stat_moment", length)?;
    if p == 0 {
        return Err(Error::domain(
            "uniform_order_stat_moment",
            "moment order p must be >= 1",
        ));
    }
    let ratio: f64 = (0..p as usize)
        .map(|j| (k + j) as f64 / (n + 1 + j) as f64)
        .product();
    Ok(length.powi(p as i32) * ratio)
}

/// `E[D_p] = L(n − 2p − 1)/(n + 1)`, where `D_p = X_(n−p) − X_(p+1)`.
pub fn uniform_expected_trimmed_diameter(n: usize, p: usize, length: f64) -> Result<f64> {
    check_length("uniform_expected_trimmed_diameter", length)?;
    if 2 * p >= n {
        return Err(Error::domain(
            "uniform_expected_trimmed_diameter",
            format!("depth p = {p} must be < n/2 = {}", n as f64 / 2.0),
        ));
    }
    Ok(length * (n - 2 * p - 1) as f64 / (n + 1) as f64)
}

/// Exact `E[(X_(n−1) − X_(1)) / (X_(n) − X_(1))] = (n − 2)/(n − 1)` for a
/// uniform sample.
///
/// At this depth the expectation of the ratio coincides with the ratio of
/// the expected diameters, which is the approximation the shrinkage curves
/// rely on for deeper trimming.
pub fn uniform_exact_shrink_ratio_p1(n: usize) -> Result<f64> {
    check_min_n("uniform_exact_shrink_ratio_p1", n, 3)?;
    Ok((n - 2) as f64 / (n - 1) as f64)
}

/// Expected drop of the sample mean when the largest point of a `U[0, L]`
/// sample is removed: `L / (2(n + 1))`.
pub fn uniform_mean_shift_remove_max(n: usize, length: f64) -> Result<f64> {
    check_min_n("uniform_mean_shift_remove_max", n, 2)?;
    check_length("uniform_mean_shift_remove_max", length)?;
    Ok(length / (2.0 * (n + 1) as f64))
}

/// `E[max |X_i|] ≈ σ √(π ln n / 2)`.
///
/// Derived from the Chu fit of erf; closer to simulation than the classical
/// asymptotic expansion for `n` up to about 10⁴.
pub fn gaussian_expected_max_abs(n: usize, sigma: f64) -> Result<f64> {
    check_min_n("gaussian_expected_max_abs", n, 2)?;
    check_sigma("gaussian_expected_max_abs", sigma)?;
    Ok(sigma * (PI * (n as f64).ln() / 2.0).sqrt())
}

/// Large-`n` asymptotic `σ√(2 ln n) + σ ln(4π) / (2√(2 ln n))`.
pub fn gaussian_expected_max_abs_refined(n: usize, sigma: f64) -> Result<f64> {
    check_min_n("gaussian_expected_max_abs_refined", n, 3)?;
    check_sigma("gaussian_expected_max_abs_refined", sigma)?;
    let root = (2.0 * (n as f64).ln()).sqrt();
    Ok(sigma * (root + (4.0 * PI).ln() / (2.0 * root)))
}

/// Density of the `k`-th order statistic of `n` draws from `N(0, σ²)`.
///
/// Factorials and powers are combined in log space, so the density stays
/// finite for `n` well beyond 170.
pub fn gaussian_order_stat_pdf(n: usize, k: usize, sigma: f64, x: f64) -> Result<f64> {
    OrderIndex::new(n, k)?;
    check_sigma("gaussian_order_stat_pdf", sigma)?;
    let z = x / (sigma * std::f64::consts::SQRT_2);
    let mut log_density = ln_factorial(n)
        - ln_factorial(k - 1)
        - ln_factorial(n - k)
        - (n - 1) as f64 * std::f64::consts::LN_2
        - (sigma * (2.0 * PI).sqrt()).ln()
        - z * z;
    if k > 1 {
        log_density += (k - 1) as f64 * erfc(-z).ln();
    }
    if n > k {
        log_density += (n - k) as f64 * erfc(z).ln();
    }
    Ok(log_density.exp())
}

fn check_tail_n(op: &'static str, n: usize) -> Result<()> {
    check_min_n(op, n, 2)
}

/// Alternating-sum approximation `v_k` of `E[X_(k)]` for `N(0, σ²)`:
///
/// `σ√(2π)/2 · n(n−1)…(n−K) · Σ_{i=0}^{K} (−1)^{K−i} √ln(n−i) / (i!(K−i)!(n−i))`
///
/// with `K = n − k`. Meant for upper ranks with `K ≪ n`; ranks in the lower
/// half are reflected. Depths beyond [`MAX_ALTERNATING_DEPTH`] are refused
/// because the cancellation in the sum swamps double precision.
pub fn gaussian_expected_order_stat_sum(n: usize, k: usize, sigma: f64) -> Result<f64> {
    let idx = OrderIndex::new(n, k)?;
    check_tail_n("gaussian_expected_order_stat_sum", n)?;
    check_sigma("gaussian_expected_order_stat_sum", sigma)?;
    if idx.is_lower_half() {
        return Ok(-gaussian_expected_order_stat_sum(
            n,
            idx.mirrored().k(),
            sigma,
        )?);
    }
    let depth = idx.depth();
    if depth > MAX_ALTERNATING_DEPTH {
        return Err(Error::domain(
            "gaussian_expected_order_stat_sum",
            format!("tail depth K = {depth} exceeds {MAX_ALTERNATING_DEPTH}"),
        ));
    }
    let log_prefix: f64 = (0..=depth).map(|j| ((n - j) as f64).ln()).sum();
    let terms = (0..=depth).map(|i| {
        let m = (n - i) as f64;
        let magnitude =
            (log_prefix - ln_factorial(i) - ln_factorial(depth - i) - m.ln()).exp() * m.ln().sqrt();
        if (depth - i).is_multiple_of(2) {
            magnitude
        } else {
            -magnitude
        }
    });
    Ok(sigma * (2.0 * PI).sqrt() / 2.0 * compensated_sum(terms))
}

/// Harmonic-corrected approximation `u_k`:
///
/// `E[X_(k)] ≈ σ√(2π ln n)/2 · (1 − H_{n−k} / (2 ln n))`.
///
/// Lower-half ranks use the reflection `E[X_(k)] = −E[X_(n−k+1)]`.
pub fn gaussian_expected_order_stat_harmonic(n: usize, k: usize, sigma: f64) -> Result<f64> {
    let idx = OrderIndex::new(n, k)?;
    check_min_n("gaussian_expected_order_stat_harmonic", n, 3)?;
    check_sigma("gaussian_expected_order_stat_harmonic", sigma)?;
    if idx.is_lower_half() {
        return Ok(-gaussian_expected_order_stat_harmonic(
            n,
            idx.mirrored().k(),
            sigma,
        )?);
    }
    let two_ln_n = 2.0 * (n as f64).ln();
    let ratio = harmonic(idx.depth()) / two_ln_n;
    if ratio >= 1.0 {
        return Err(Error::ValidityRange { ratio });
    }
    Ok(sigma * (PI * two_ln_n).sqrt() / 2.0 * (1.0 - ratio))
}

/// Weight applied to the `i`-th term of the alternating sums `S_0, S_1, S_2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SumWeight {
    One,
    Index,
    IndexSquared,
}

impl SumWeight {
    fn apply(self, i: usize) -> f64 {
        let i = i as f64;
        match self {
            SumWeight::One => 1.0,
            SumWeight::Index => i,
            SumWeight::IndexSquared => i * i,
        }
    }
}

fn check_identity_args(depth: usize, n: usize) -> Result<()> {
    if depth >= n {
        return Err(Error::domain(
            "alternating_sum_identity",
            format!("depth K = {depth} must be < n = {n}"),
        ));
    }
    Ok(())
}

/// Closed form of `Σ_{i=0}^{K} (−1)^{K−i} w(i) / (i!(K−i)!(n−i))`.
///
/// * `w = 1`: `1/(n(n−1)…(n−K))`
/// * `w = i`: `1/((n−1)…(n−K))` for `K ≥ 1`, and 0 at `K = 0`
/// * `w = i²`: `n/((n−1)…(n−K))` for `K ≥ 2`; 0 at `K = 0` and `1/(n−1)` at `K = 1`
///
/// The low-depth cases follow from `i/(n−i) = n/(n−i) − 1` and
/// `i²/(n−i) = n²/(n−i) − (n+i)`: the polynomial remainders only vanish
/// under the `K`-th difference once `K` exceeds their degree.
pub fn alternating_sum_identity(depth: usize, n: usize, weight: SumWeight) -> Result<f64> {
    check_identity_args(depth, n)?;
    let tail_product: f64 = (1..=depth).map(|j| (n - j) as f64).product();
    Ok(match (weight, depth) {
        (SumWeight::One, _) => 1.0 / (n as f64 * tail_product),
        (SumWeight::Index, 0) | (SumWeight::IndexSquared, 0) => 0.0,
        (SumWeight::Index, _) => 1.0 / tail_product,
        (SumWeight::IndexSquared, 1) => 1.0 / (n - 1) as f64,
        (SumWeight::IndexSquared, _) => n as f64 / tail_product,
    })
}

/// Term-by-term evaluation of the same alternating sum, for cross-checks.
pub fn alternating_sum_literal(depth: usize, n: usize, weight: SumWeight) -> Result<f64> {
    check_identity_args(depth, n)?;
    let terms = (0..=depth).map(|i| {
        let magnitude = weight.apply(i)
            * (-ln_factorial(i) - ln_factorial(depth - i) - ((n - i) as f64).ln()).exp();
        if (depth - i).is_multiple_of(2) {
            magnitude
        } else {
            -magnitude
        }
    });
    Ok(compensated_sum(terms))
}

/// Expected drop of the sample mean when the largest point of an
/// `N(μ, σ²)` sample is removed: `σ√(2π ln n) / (2(n − 1))`.
pub fn gaussian_mean_shift_remove_max(n: usize, sigma: f64) -> Result<f64> {
    check_min_n("gaussian_mean_shift_remove_max", n, 3)?;
    check_sigma("gaussian_mean_shift_remove_max", sigma)?;
    Ok(sigma * (2.0 * PI * (n as f64).ln()).sqrt() / (2.0 * (n - 1) as f64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::std_normal_pdf;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn uniform_order_stats() {
        assert_eq!(uniform_expected_order_stat(3, 2, 1.0).unwrap(), 0.5);
        assert!(close(
            uniform_expected_order_stat(4, 4, 1.0).unwrap(),
            0.8,
            1e-15
        ));
        assert!(uniform_expected_order_stat(4, 5, 1.0).is_err());
        assert!(uniform_expected_order_stat(4, 0, 1.0).is_err());
        assert!(uniform_expected_order_stat(4, 1, 0.0).is_err());

        for n in 1..30 {
            for k in 1..=n {
                let first = uniform_expected_order_stat(n, k, 2.5).unwrap();
                let moment = uniform_order_stat_moment(n, k, 2.5, 1).unwrap();
                assert!(close(first, moment, 1e-14));
                let mirror = uniform_expected_order_stat(n, n - k + 1, 2.5).unwrap();
                assert!(close(first + mirror, 2.5, 1e-13));
                if k < n {
                    assert!(uniform_expected_order_stat(n, k + 1, 2.5).unwrap() > first);
                }
            }
        }
        assert!(close(
            uniform_order_stat_moment(2, 2, 1.0, 2).unwrap(),
            0.5,
            1e-15
        ));
        assert!(uniform_order_stat_moment(2, 2, 1.0, 0).is_err());
    }

    #[test]
    fn trimmed_diameter() {
        assert!(close(
            uniform_expected_trimmed_diameter(100, 0, 1.0).unwrap(),
            99.0 / 101.0,
            1e-15
        ));
        assert_eq!(uniform_expected_trimmed_diameter(5, 2, 1.0).unwrap(), 0.0);
        assert!(uniform_expected_trimmed_diameter(4, 2, 1.0).is_err());
        for n in 2usize..40 {
            for p in 0..n.div_ceil(2) {
                let d = uniform_expected_trimmed_diameter(n, p, 3.0).unwrap();
                let diff = uniform_expected_order_stat(n, n - p, 3.0).unwrap()
                    - uniform_expected_order_stat(n, p + 1, 3.0).unwrap();
                assert!(close(d, diff, 1e-13), "n={n} p={p}");
            }
        }
    }

    #[test]
    fn exact_ratio_and_uniform_shift() {
        assert_eq!(uniform_exact_shrink_ratio_p1(3).unwrap(), 0.5);
        assert!(close(
            uniform_exact_shrink_ratio_p1(100).unwrap(),
            98.0 / 99.0,
            1e-15
        ));
        assert!(uniform_exact_shrink_ratio_p1(2).is_err());
        assert!(close(
            uniform_mean_shift_remove_max(9, 1.0).unwrap(),
            0.05,
            1e-15
        ));
        assert!(close(
            uniform_mean_shift_remove_max(99, 2.0).unwrap(),
            0.01,
            1e-15
        ));
        assert!(uniform_mean_shift_remove_max(1, 1.0).is_err());
    }

    #[test]
    fn extreme_value_estimators() {
        let v = gaussian_expected_max_abs(100, 1.0).unwrap();
        assert!(close(v, 2.6895, 1e-4));
        assert!(close(
            gaussian_expected_max_abs(100, 2.0).unwrap(),
            2.0 * v,
            1e-14
        ));
        let r = gaussian_expected_max_abs_refined(100, 1.0).unwrap();
        assert!(close(r, 3.4519, 1e-4));
        assert!(close(
            gaussian_expected_max_abs_refined(100, 3.0).unwrap(),
            3.0 * r,
            1e-13
        ));
        assert!(gaussian_expected_max_abs(1, 1.0).is_err());
        assert!(gaussian_expected_max_abs_refined(2, 1.0).is_err());
        assert!(gaussian_expected_max_abs(10, 0.0).is_err());
    }

    #[test]
    fn order_stat_density() {
        for i in -40..=40 {
            let x = i as f64 / 10.0;
            let single = gaussian_order_stat_pdf(1, 1, 1.3, x).unwrap();
            assert!(close(single, std_normal_pdf(x, 1.3).unwrap(), 1e-15));
        }
        let median3 = gaussian_order_stat_pdf(3, 2, 1.0, 0.0).unwrap();
        assert!(close(median3, 6.0 * 0.25 * 0.398_942_280_401_432_7, 1e-14));
        assert!(close(median3, 0.59841, 1e-5));
        // large n does not overflow
        let big = gaussian_order_stat_pdf(500, 499, 1.0, 2.8).unwrap();
        assert!(big.is_finite() && big > 0.0);
        // partition of the sample: Σ_k f_k = n f
        for n in 1..=10 {
            for i in -30..=30 {
                let x = i as f64 / 10.0;
                let total: f64 = (1..=n)
                    .map(|k| gaussian_order_stat_pdf(n, k, 1.0, x).unwrap())
                    .sum();
                let target = n as f64 * std_normal_pdf(x, 1.0).unwrap();
                assert!(close(total, target, 1e-13 * n as f64), "n={n} x={x}");
            }
        }
    }

    #[test]
    fn tail_sum_collapses_at_the_maximum() {
        for &n in &[2usize, 10, 100, 1000] {
            let v = gaussian_expected_order_stat_sum(n, n, 1.0).unwrap();
            let expected = (2.0 * PI * (n as f64).ln()).sqrt() / 2.0;
            assert!(close(v, expected, 1e-12), "n = {n}");
        }
        assert!(gaussian_expected_order_stat_sum(100, 69, 1.0).is_err());
        assert!(gaussian_expected_order_stat_sum(100, 70, 1.0).is_ok());
    }

    #[test]
    fn harmonic_approximation() {
        let u = gaussian_expected_order_stat_harmonic(100, 100, 1.0).unwrap();
        assert!(close(u, 2.6896, 1e-4));
        let lower = gaussian_expected_order_stat_harmonic(100, 1, 1.0).unwrap();
        assert_eq!(lower, -u);
        let shifted = GaussianModel::new(5.0, 1.0).unwrap();
        assert!(close(
            shifted.expected_order_stat(100, 100).unwrap(),
            5.0 + u,
            1e-14
        ));
        // u_k nonincreasing as the depth grows
        for k in (51..100).rev() {
            let deeper = gaussian_expected_order_stat_harmonic(100, k, 1.0).unwrap();
            let shallower = gaussian_expected_order_stat_harmonic(100, k + 1, 1.0).unwrap();
            assert!(deeper <= shallower);
        }
        assert!(gaussian_expected_order_stat_harmonic(2, 2, 1.0).is_err());
    }

    #[test]
    fn alternating_sums_small_cases() {
        assert!(close(
            alternating_sum_identity(0, 7, SumWeight::One).unwrap(),
            1.0 / 7.0,
            1e-16
        ));
        assert!(close(
            alternating_sum_identity(3, 10, SumWeight::One).unwrap() * 5040.0,
            1.0,
            1e-14
        ));
        assert!(close(
            alternating_sum_literal(3, 10, SumWeight::One).unwrap() * 5040.0,
            1.0,
            1e-13
        ));
        assert!(close(
            alternating_sum_identity(2, 8, SumWeight::IndexSquared).unwrap(),
            4.0 / 21.0,
            1e-15
        ));
        assert!(close(
            alternating_sum_literal(2, 8, SumWeight::IndexSquared).unwrap(),
            4.0 / 21.0,
            1e-15
        ));
        assert!(alternating_sum_identity(5, 5, SumWeight::One).is_err());
    }

    #[test]
    fn gaussian_mean_shift() {
        let s = gaussian_mean_shift_remove_max(100, 1.0).unwrap();
        assert!(close(s, 0.02717, 1e-5));
        assert!(close(
            gaussian_mean_shift_remove_max(100, 4.0).unwrap(),
            4.0 * s,
            1e-15
        ));
        assert!(gaussian_mean_shift_remove_max(2, 1.0).is_err());
    }
}
