use super::EnsembleResult;
use crate::counting::count_distribution;
use crate::error::{Error, Result};
use crate::fredholm::{Region, Spectrum};
use crate::special::regularized_lower_gamma;
use std::f64::consts::PI;
use std::sync::Arc;

/// Trace mass allowed beyond the last retained disk eigenvalue.
pub const GINIBRE_TAIL_TOLERANCE: f64 = 1e-12;

fn max_index(radius: f64) -> usize {
    (radius * radius + 10.0 * radius + 20.0).ceil() as usize
}

/// Disk eigenvalues λ_l = P(l+1, R²), l = 0..=l_max.
///
/// With `l_max = None` the smallest l_max whose tail mass is below
/// [`GINIBRE_TAIL_TOLERANCE`] is chosen, capped at ⌈R² + 10R + 20⌉.
pub fn ginibre_lambdas(radius: f64, l_max: Option<usize>) -> Result<Vec<f64>> {
    if !(radius > 0.0) || !radius.is_finite() {
        return Err(Error::InvalidArgument(format!("disk radius must be positive, got {radius}")));
    }
    let r2 = radius * radius;
    let cap = l_max.unwrap_or_else(|| max_index(radius));
    // eigenvalues up to cap, then the tail beyond it until negligible
    let mut lambdas = Vec::with_capacity(cap + 1);
    for l in 0..=cap {
        lambdas.push(regularized_lower_gamma(l as u64 + 1, r2)?);
    }
    let mut beyond = 0.0;
    let mut l = cap + 1;
    loop {
        let term = regularized_lower_gamma(l as u64 + 1, r2)?;
        beyond += term;
        if term < 1e-20 * beyond.max(1e-300) || term == 0.0 {
            break;
        }
        l += 1;
    }
    if beyond >= GINIBRE_TAIL_TOLERANCE {
        return Err(Error::Truncation(format!(
            "disk spectrum truncated at l = {cap} leaves trace {beyond:e}"
        )));
    }
    if l_max.is_none() {
        // shrink to the smallest admissible cut
        let mut tail = beyond;
        while let Some(&last) = lambdas.last() {
            if lambdas.len() == 1 || tail + last >= GINIBRE_TAIL_TOLERANCE {
                break;
            }
            tail += last;
            lambdas.pop();
        }
    }
    Ok(lambdas)
}

/// Ginibre process restricted to the disk of radius R.
pub fn ginibre_disk(radius: f64, l_max: Option<usize>) -> Result<EnsembleResult> {
    let lambdas = ginibre_lambdas(radius, l_max)?;
    let region = Region::Disk { radius };
    let spectrum = Arc::new(Spectrum::explicit(lambdas, region, "ginibre-disk")?);
    let dist = count_distribution(spectrum)?;
    let mut r = EnsembleResult::new("ginibre-disk", radius, region, 0, dist)?;
    // mean from the kernel trace: density 1/π times area
    r.asymptotic_mu = Some(radius * radius);
    r.asymptotic_sigma2 = Some(ginibre_sigma_asymptotic(2.0 * PI * radius));
    Ok(r)
}

/// σ_J² ≈ |∂J| / (2π^{3/2}).
pub fn ginibre_sigma_asymptotic(perimeter: f64) -> f64 {
    perimeter / (2.0 * PI.powf(1.5))
}
