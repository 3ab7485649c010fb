use super::{kernel_counts, EnsembleResult};
use crate::error::{Error, Result};
use crate::fredholm::{auto_order, Region};
use crate::kernels::SineKernel;
use std::f64::consts::PI;

pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Bulk-scaled GUE on J = (0, s): the sine process.
pub fn bulk_gue(s: f64, order: Option<usize>) -> Result<EnsembleResult> {
    if !(s > 0.0) || !s.is_finite() {
        return Err(Error::InvalidArgument(format!("bulk GUE requires s > 0, got {s}")));
    }
    let order = order.unwrap_or_else(|| auto_order(&SineKernel, 0.0, s));
    let dist = kernel_counts(&SineKernel, 0.0, s, Some(order))?;
    let mut result = EnsembleResult::new("gue-bulk", s, Region::Interval { a: 0.0, b: s }, order, dist)?;
    result.asymptotic_mu = Some(s);
    result.asymptotic_sigma2 = (s > 1.0).then(|| sine_variance_asymptotic(s));
    Ok(result)
}

/// σ_J² ≈ (log s + γ + 1 + log 2π)/π² for the sine process on an interval of length s.
pub fn sine_variance_asymptotic(s: f64) -> f64 {
    (s.ln() + EULER_GAMMA + 1.0 + (2.0 * PI).ln()) / (PI * PI)
}
