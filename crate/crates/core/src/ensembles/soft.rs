use super::{kernel_counts, EnsembleResult};
use crate::error::{Error, Result};
use crate::fredholm::{auto_order, Region};
use crate::kernels::{airy_kernel, deflate, AiryKernel, Kernel};
use std::f64::consts::PI;

fn check_soft_region(s: f64, truncation: f64) -> Result<()> {
    if !s.is_finite() || !truncation.is_finite() {
        return Err(Error::InvalidArgument("soft-edge parameters must be finite".into()));
    }
    if -s >= truncation {
        return Err(Error::InvalidArgument(format!(
            "soft-edge region (-{s}, {truncation}) is empty"
        )));
    }
    Ok(())
}

/// μ_J ≈ 2 s^{3/2} / (3π).
pub fn soft_edge_asymptotic_mu(s: f64) -> f64 {
    2.0 * s.powf(1.5) / (3.0 * PI)
}

/// σ_J² ≈ log(s^{3/2}) / (2π²).
pub fn soft_edge_asymptotic_sigma2(s: f64) -> f64 {
    1.5 * s.ln() / (2.0 * PI * PI)
}

/// Typical location −μ_ℓ of the (ℓ+1)-th largest soft-edge eigenvalue:
/// μ_ℓ = (3πℓ/2)^{2/3}.
pub fn kth_largest_location(l: f64) -> f64 {
    (1.5 * PI * l).powf(2.0 / 3.0)
}

/// Soft-edge GUE on J = (−s, ∞), truncated to (−s, truncation).
pub fn soft_edge(s: f64, order: Option<usize>, truncation: f64) -> Result<EnsembleResult> {
    if !(s > 0.0) {
        return Err(Error::InvalidArgument(format!("soft edge requires s > 0, got {s}")));
    }
    check_soft_region(s, truncation)?;
    let order = order.unwrap_or_else(|| auto_order(&AiryKernel, -s, truncation));
    let dist = kernel_counts(&AiryKernel, -s, truncation, Some(order))?;
    let mut r = EnsembleResult::new(
        "gue-soft",
        s,
        Region::Interval { a: -s, b: truncation },
        order,
        dist,
    )?;
    r.asymptotic_mu = Some(soft_edge_asymptotic_mu(s));
    r.asymptotic_sigma2 = Some(soft_edge_asymptotic_sigma2(s));
    Ok(r)
}

/// p^soft(k; (−s, ∞)): density for a point at −s with exactly k further points
/// to its right, i.e. the density of the (k+1)-th largest eigenvalue at −s.
///
/// Computed as ρ(−s) · E_s(k; (−s, T)) with E_s from the Airy kernel
/// conditioned at −s.
pub fn conditioned_soft_density(
    k: usize,
    s: f64,
    order: Option<usize>,
    truncation: f64,
) -> Result<f64> {
    check_soft_region(s, truncation)?;
    let conditioned = deflate(airy_kernel(), -s)?;
    let order = order.unwrap_or_else(|| auto_order(conditioned.as_ref(), -s, truncation));
    let dist = kernel_counts(conditioned.as_ref(), -s, truncation, Some(order))?;
    Ok(conditioned.base_diagonal() * dist.get(k))
}

/// Soft-edge density ρ(x) = K_Ai(x, x).
pub fn soft_density(x: f64) -> f64 {
    AiryKernel.evaluate(x, x)
}
