#![allow(dead_code)]
//! Oracles shared by the integration tests.

use num::{BigInt, BigRational, One, Zero};
use span_shrink::order_stats::SumWeight;

/// Adaptive Simpson on [a, b].
pub fn integrate<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> f64 {
    fn simpson<F: Fn(f64) -> f64>(f: &F, a: f64, fa: f64, b: f64, fb: f64) -> (f64, f64, f64) {
        let m = 0.5 * (a + b);
        let fm = f(m);
        ((b - a) / 6.0 * (fa + 4.0 * fm + fb), m, fm)
    }
    #[allow(clippy::too_many_arguments)]
    fn recurse<F: Fn(f64) -> f64>(
        f: &F,
        a: f64,
        fa: f64,
        b: f64,
        fb: f64,
        whole: f64,
        m: f64,
        fm: f64,
        tol: f64,
        depth: u32,
    ) -> f64 {
        let (left, lm, flm) = simpson(f, a, fa, m, fm);
        let (right, rm, frm) = simpson(f, m, fm, b, fb);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            return left + right + delta / 15.0;
        }
        recurse(f, a, fa, m, fm, left, lm, flm, tol / 2.0, depth - 1)
            + recurse(f, m, fm, b, fb, right, rm, frm, tol / 2.0, depth - 1)
    }
    let (fa, fb) = (f(a), f(b));
    let (whole, m, fm) = simpson(f, a, fa, b, fb);
    recurse(f, a, fa, b, fb, whole, m, fm, tol, 50)
}

pub fn factorial(m: usize) -> BigInt {
    (1..=m).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// Exact rational value of Σ (−1)^{K−i} w(i) / (i!(K−i)!(n−i)).
pub fn exact_alternating_sum(depth: usize, n: usize, weight: SumWeight) -> BigRational {
    let mut total = BigRational::zero();
    for i in 0..=depth {
        let w = match weight {
            SumWeight::One => 1usize,
            SumWeight::Index => i,
            SumWeight::IndexSquared => i * i,
        };
        let denom = factorial(i) * factorial(depth - i) * BigInt::from(n - i);
        let term = BigRational::new(BigInt::from(w), denom);
        if (depth - i).is_multiple_of(2) {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

/// O(n²) DBSCAN on arbitrary points; border points join the cluster of a
/// core neighbour to their left when one exists, else one to their right.
pub fn brute_force_dbscan(xs: &[f64], eps: f64, min_samples: usize) -> Vec<Option<usize>> {
    let n = xs.len();
    let core: Vec<bool> = (0..n)
        .map(|i| (0..n).filter(|&j| (xs[i] - xs[j]).abs() <= eps).count() >= min_samples)
        .collect();
    let mut component = vec![None; n];
    let mut count = 0;
    for start in 0..n {
        if !core[start] || component[start].is_some() {
            continue;
        }
        let mut stack = vec![start];
        component[start] = Some(count);
        while let Some(i) = stack.pop() {
            for j in 0..n {
                if core[j] && component[j].is_none() && (xs[i] - xs[j]).abs() <= eps {
                    component[j] = Some(count);
                    stack.push(j);
                }
            }
        }
        count += 1;
    }
    let mut labels = component.clone();
    for i in 0..n {
        if core[i] {
            continue;
        }
        let neighbour = |left: bool| {
            (0..n).find(|&j| {
                core[j]
                    && (xs[i] - xs[j]).abs() <= eps
                    && if left { xs[j] <= xs[i] } else { xs[j] > xs[i] }
            })
        };
        labels[i] = neighbour(true)
            .or_else(|| neighbour(false))
            .and_then(|j| component[j]);
    }
    labels
}

/// True when two labellings induce the same partition and noise set.
pub fn same_partition(a: &[Option<usize>], b: &[Option<usize>]) -> bool {
    use std::collections::HashMap;
    let mut forward = HashMap::new();
    let mut backward = HashMap::new();
    a.iter().zip(b).all(|(x, y)| match (x, y) {
        (None, None) => true,
        (Some(x), Some(y)) => {
            *forward.entry(*x).or_insert(*y) == *y && *backward.entry(*y).or_insert(*x) == *x
        }
        _ => false,
    })
}
