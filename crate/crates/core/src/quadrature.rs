//! Gauss–Legendre rules and their affine images.

use crate::error::{Error, Result};
use std::f64::consts::PI;

/// Largest supported Gauss–Legendre order.
pub const MAX_ORDER: usize = 2000;

/// Minimum order used by [`default_order`].
pub const MIN_DEFAULT_ORDER: usize = 60;

/// Default right end of the truncated soft-edge region `(-s, ∞)`.
pub const DEFAULT_TRUNCATION: f64 = 12.0;

#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl QuadratureRule {
    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.nodes.iter().copied().zip(self.weights.iter().copied())
    }
}

/// Legendre polynomial P_n(x) and its derivative via the three-term recurrence.
fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let nf = n as f64;
    // P_n'(x) = n (x P_n - P_{n-1}) / (x^2 - 1)
    let dp = nf * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

/// Gauss–Legendre rule of order `n` on [-1, 1].
///
/// Nodes are found by Newton iteration from the cosine initial guess, one
/// root per symmetric pair; the negative half is filled by reflection so the
/// rule is exactly symmetric.
pub fn gauss_legendre(n: usize) -> Result<QuadratureRule> {
    if n == 0 || n > MAX_ORDER {
        return Err(Error::InvalidArgument(format!(
            "quadrature order {n} outside 1..={MAX_ORDER}"
        )));
    }
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let nf = n as f64;
    for i in 0..n.div_ceil(2) {
        // descending roots: x_i ≈ cos(π (i + 3/4) / (n + 1/2))
        let mut x = (PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if p.abs() <= 1e-15 || dx.abs() <= 1e-16 * x.abs().max(1.0) {
                let (_, d) = legendre_with_derivative(n, x);
                dp = d;
                break;
            }
        }
        if n % 2 == 1 && i == n / 2 {
            x = 0.0;
            dp = legendre_with_derivative(n, 0.0).1;
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[n - 1 - i] = x;
        nodes[i] = -x;
        weights[n - 1 - i] = w;
        weights[i] = w;
    }
    Ok(QuadratureRule { nodes, weights })
}

/// Affine image of a rule on [-1, 1] onto (a, b).
pub fn map_to_interval(rule: &QuadratureRule, a: f64, b: f64) -> Result<QuadratureRule> {
    if !a.is_finite() || !b.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "interval endpoints must be finite, got ({a}, {b})"
        )));
    }
    if a >= b {
        return Err(Error::InvalidArgument(format!(
            "interval requires a < b, got ({a}, {b})"
        )));
    }
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    Ok(QuadratureRule {
        nodes: rule.nodes.iter().map(|&t| mid + half * t).collect(),
        weights: rule.weights.iter().map(|&w| half * w).collect(),
    })
}

/// Gauss–Legendre rule of order `n` directly on (a, b).
pub fn gauss_legendre_on(n: usize, a: f64, b: f64) -> Result<QuadratureRule> {
    map_to_interval(&gauss_legendre(n)?, a, b)
}

/// Default Nyström order for an interval of the given length, where
/// `bandwidth` is the largest angular frequency of the kernel on the interval.
///
/// Gauss–Legendre resolves `exp(iωx)` on a half-length `L/2` once the order
/// exceeds `ωL/2`; the constant margin buys the remaining digits.
pub fn default_order(length: f64, bandwidth: f64) -> usize {
    let needed = (0.5 * bandwidth * length).ceil() as usize + 40;
    needed.clamp(MIN_DEFAULT_ORDER, MAX_ORDER)
}
