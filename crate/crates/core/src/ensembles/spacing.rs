use super::kernel_counts;
use crate::error::{Error, Result};
use crate::kernels::{deflate, sine_kernel};
use std::f64::consts::PI;

/// ρ₂(0, s) = 1 − (sin πs / πs)² for the sine process.
pub fn two_point_density(s: f64) -> f64 {
    let t = PI * s;
    if t.abs() < 1e-4 {
        // 1 − sinc² = t²/3 − 2t⁴/45 + …
        t * t / 3.0 - 2.0 * t.powi(4) / 45.0
    } else {
        1.0 - (t.sin() / t).powi(2)
    }
}

/// p^bulk(k; s): density of two points at separation s with exactly k points
/// between them (the k-th neighbour spacing density at unit density).
///
/// Conditions the sine kernel at 0 and then at s, counts on (0, s), and
/// multiplies by ρ₂(0, s).
pub fn bulk_spacing_density(k: usize, s: f64, order: Option<usize>) -> Result<f64> {
    if !(s > 0.0) || !s.is_finite() {
        return Err(Error::InvalidArgument(format!("spacing requires s > 0, got {s}")));
    }
    let at_origin = deflate(sine_kernel(), 0.0)?;
    let both = deflate(at_origin, s)?;
    let dist = kernel_counts(both.as_ref(), 0.0, s, order)?;
    Ok(two_point_density(s) * dist.get(k))
}

/// Trapezoid rule over a (possibly non-uniform) grid.
pub fn trapezoid(x: &[f64], y: &[f64]) -> f64 {
    x.windows(2)
        .zip(y.windows(2))
        .map(|(xs, ys)| 0.5 * (xs[1] - xs[0]) * (ys[0] + ys[1]))
        .sum()
}
