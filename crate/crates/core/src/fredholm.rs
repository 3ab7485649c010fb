//! Nyström discretization of the integral operator K on J, its spectrum, the
//! Fredholm determinant, and the trace formulas for the count mean and variance.

use crate::error::{Error, Result};
use crate::kernels::Kernel;
use crate::linalg::SymmetricMatrix;
use crate::quadrature::{default_order, gauss_legendre_on};

/// Eigenvalue excursion outside [0, 1] that is clamped rather than rejected.
pub const CLAMP_TOLERANCE: f64 = 1e-9;

/// Eigenvalues below this are dropped before counting convolutions.
pub const RETENTION_FLOOR: f64 = 1e-16;

/// Upper bound on the total mass of dropped eigenvalues.
pub const MAX_DROPPED_MASS: f64 = 1e-12;

/// Minimum Nyström order accepted by [`nystrom_spectrum`].
pub const MIN_NYSTROM_ORDER: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Region {
    Interval { a: f64, b: f64 },
    Disk { radius: f64 },
}

impl Region {
    /// Length of an interval, area of a disk.
    pub fn measure(&self) -> f64 {
        match *self {
            Region::Interval { a, b } => b - a,
            Region::Disk { radius } => std::f64::consts::PI * radius * radius,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct ClampReport {
    pub clamped: usize,
    pub max_excursion: f64,
}

/// Operator eigenvalues, clamped into [0, 1] and sorted descending.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    pub lambdas: Vec<f64>,
    pub clamp_report: ClampReport,
    pub region: Region,
    pub kernel_name: String,
    pub quad_order: usize,
    /// Σ w_i K(x_i, x_i) for Nyström spectra, Σλ for explicit spectra.
    pub trace: f64,
}

impl Spectrum {
    /// Validates, clamps and sorts raw eigenvalues.
    pub fn from_raw(
        mut raw: Vec<f64>,
        region: Region,
        kernel_name: impl Into<String>,
        quad_order: usize,
        trace: f64,
    ) -> Result<Self> {
        let mut report = ClampReport::default();
        for v in raw.iter_mut() {
            if !v.is_finite() {
                return Err(Error::NonContractive {
                    excursion: f64::INFINITY,
                });
            }
            let excursion = if *v < 0.0 {
                -*v
            } else if *v > 1.0 {
                *v - 1.0
            } else {
                continue;
            };
            if excursion > CLAMP_TOLERANCE {
                return Err(Error::NonContractive { excursion });
            }
            report.clamped += 1;
            report.max_excursion = report.max_excursion.max(excursion);
            *v = v.clamp(0.0, 1.0);
        }
        raw.sort_by(|a, b| b.total_cmp(a));
        Ok(Self {
            lambdas: raw,
            clamp_report: report,
            region,
            kernel_name: kernel_name.into(),
            quad_order,
            trace,
        })
    }

    /// An explicitly known spectrum (no quadrature).
    pub fn explicit(lambdas: Vec<f64>, region: Region, kernel_name: impl Into<String>) -> Result<Self> {
        let trace = lambdas.iter().sum();
        Self::from_raw(lambdas, region, kernel_name, 0, trace)
    }

    /// μ_l = λ_l / (1 − λ_l).
    pub fn mus(&self) -> Vec<f64> {
        self.lambdas.iter().map(|&l| l / (1.0 - l)).collect()
    }

    /// Eigenvalues used for counting: those below [`RETENTION_FLOOR`] are
    /// dropped once their total mass is shown to be negligible.
    pub fn retained(&self) -> Result<Vec<f64>> {
        let dropped: f64 = self
            .lambdas
            .iter()
            .filter(|&&l| l < RETENTION_FLOOR)
            .sum();
        if dropped >= MAX_DROPPED_MASS {
            return Err(Error::Truncation(format!(
                "dropped eigenvalue mass {dropped:e} exceeds {MAX_DROPPED_MASS:e}"
            )));
        }
        Ok(self
            .lambdas
            .iter()
            .copied()
            .filter(|&l| l >= RETENTION_FLOOR)
            .collect())
    }
}

/// Symmetrized Nyström matrix A_ij = √w_i K(x_i, x_j) √w_j.
pub fn nystrom_matrix(kernel: &dyn Kernel, a: f64, b: f64, order: usize) -> Result<SymmetricMatrix> {
    if order < MIN_NYSTROM_ORDER {
        return Err(Error::InvalidArgument(format!(
            "Nyström order {order} below minimum {MIN_NYSTROM_ORDER}"
        )));
    }
    kernel.check_region(a, b)?;
    let rule = gauss_legendre_on(order, a, b)?;
    let gram = kernel.gram(&rule.nodes);
    let sqrt_w: Vec<f64> = rule.weights.iter().map(|w| w.sqrt()).collect();
    Ok(SymmetricMatrix::from_upper(order, |i, j| {
        sqrt_w[i] * gram[i * order + j] * sqrt_w[j]
    }))
}

/// Order used when the caller does not pin one.
pub fn auto_order(kernel: &dyn Kernel, a: f64, b: f64) -> usize {
    default_order(b - a, kernel.bandwidth(a, b))
}

pub fn nystrom_spectrum(kernel: &dyn Kernel, a: f64, b: f64, order: usize) -> Result<Spectrum> {
    let matrix = nystrom_matrix(kernel, a, b, order)?;
    let raw = matrix.eigenvalues()?;
    Spectrum::from_raw(
        raw,
        Region::Interval { a, b },
        kernel.name(),
        order,
        matrix.trace(),
    )
}

/// Ξ(1 − ξ; J) = Π_l (1 − ξ λ_l).
pub fn fredholm_det(spectrum: &Spectrum, xi: f64) -> f64 {
    let factors = spectrum.lambdas.iter().map(|&l| 1.0 - xi * l);
    if spectrum.lambdas.iter().all(|&l| 1.0 - xi * l > 0.0) {
        factors.map(f64::ln).sum::<f64>().exp()
    } else {
        factors.product()
    }
}

/// Smallest eigenvalue that contributes a zero of Ξ.
pub const ZERO_FLOOR: f64 = 1e-14;

/// Zeros z_l = −(1 − λ_l)/λ_l of the generating function Ξ(z; J), one per
/// eigenvalue above [`ZERO_FLOOR`], in the order of the spectrum.
///
/// An eigenvalue that rounds to exactly 1 yields a zero at −0.
pub fn xi_zeros(spectrum: &Spectrum) -> Vec<f64> {
    spectrum
        .lambdas
        .iter()
        .filter(|&&l| l > ZERO_FLOOR)
        .map(|&l| -(1.0 - l) / l)
        .collect()
}

/// (μ_J, σ_J²) from the trace formulas on the Nyström discretization:
/// μ = Σ w_i K(x_i,x_i), σ² = μ − Σ_ij w_i w_j K(x_i,x_j)².
pub fn trace_mean_variance(kernel: &dyn Kernel, a: f64, b: f64, order: usize) -> Result<(f64, f64)> {
    let matrix = nystrom_matrix(kernel, a, b, order)?;
    let mu = matrix.trace();
    Ok((mu, mu - matrix.trace_of_square()))
}
