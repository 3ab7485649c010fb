//! Correlation kernels and rank-one conditioning.

use crate::error::{Error, Result};
use crate::special::{airy_pair_unchecked, AIRY_DOMAIN};
use num_complex::Complex64;
use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Symmetry {
    RealSymmetric,
    ComplexHermitian,
}

/// A real-symmetric correlation kernel on (a subset of) the real line.
pub trait Kernel: Send + Sync + fmt::Debug {
    fn name(&self) -> String;

    fn evaluate(&self, x: f64, y: f64) -> f64;

    fn symmetry(&self) -> Symmetry {
        Symmetry::RealSymmetric
    }

    /// Human-readable description of where the kernel is meaningful.
    fn natural_domain(&self) -> &'static str {
        "(-inf, inf)"
    }

    /// Largest local angular frequency of the kernel on (a, b); drives the
    /// default quadrature order.
    fn bandwidth(&self, _a: f64, _b: f64) -> f64 {
        PI
    }

    /// Rejects regions on which the kernel cannot be evaluated accurately.
    fn check_region(&self, _a: f64, _b: f64) -> Result<()> {
        Ok(())
    }

    /// Row-major matrix of K(x_i, x_j) over the given nodes.
    fn gram(&self, nodes: &[f64]) -> Vec<f64> {
        let n = nodes.len();
        let mut g = vec![0.0; n * n];
        for i in 0..n {
            for j in i..n {
                let v = self.evaluate(nodes[i], nodes[j]);
                g[i * n + j] = v;
                g[j * n + i] = v;
            }
        }
        g
    }
}

pub type KernelRef = Arc<dyn Kernel>;

fn sinc_pi(d: f64) -> f64 {
    let t = PI * d;
    if t.abs() < 1e-8 {
        1.0 - t * t / 6.0
    } else {
        t.sin() / t
    }
}

/// K(x,y) = sin π(x−y) / π(x−y).
#[derive(Debug, Clone, Copy, Default)]
pub struct SineKernel;

impl Kernel for SineKernel {
    fn name(&self) -> String {
        "sine".into()
    }

    fn evaluate(&self, x: f64, y: f64) -> f64 {
        sinc_pi(x - y)
    }
}

pub fn sine_kernel() -> KernelRef {
    Arc::new(SineKernel)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Plus,
    Minus,
}

/// Even (`Plus`) or odd (`Minus`) part of the sine kernel on the half line:
/// K(x,y) ± K(x,−y).
///
/// On (0, t) this is the sine kernel on (−t, t) restricted to even or odd
/// functions, so its spectrum is the corresponding half of the symmetric-interval
/// spectrum and lies in [0, 1].
#[derive(Debug, Clone, Copy)]
pub struct SineParityKernel {
    pub parity: Parity,
}

impl Kernel for SineParityKernel {
    fn name(&self) -> String {
        match self.parity {
            Parity::Plus => "sine-plus".into(),
            Parity::Minus => "sine-minus".into(),
        }
    }

    fn evaluate(&self, x: f64, y: f64) -> f64 {
        let reflected = sinc_pi(x + y);
        match self.parity {
            Parity::Plus => sinc_pi(x - y) + reflected,
            Parity::Minus => sinc_pi(x - y) - reflected,
        }
    }

    fn natural_domain(&self) -> &'static str {
        "(0, inf)"
    }
}

pub fn sine_pm_kernel(parity: Parity) -> KernelRef {
    Arc::new(SineParityKernel { parity })
}

/// Separation below which the Airy kernel switches to its diagonal expansion.
pub const AIRY_NEAR_DIAGONAL: f64 = 1e-4;

/// K(x,y) = (Ai(x)Ai′(y) − Ai(y)Ai′(x)) / (x − y).
#[derive(Debug, Clone, Copy, Default)]
pub struct AiryKernel;

impl AiryKernel {
    pub fn diagonal(x: f64) -> f64 {
        let (a, ap) = airy_pair_unchecked(x);
        ap * ap - x * a * a
    }
}

impl Kernel for AiryKernel {
    fn name(&self) -> String {
        "airy".into()
    }

    fn evaluate(&self, x: f64, y: f64) -> f64 {
        let d = x - y;
        if d.abs() < AIRY_NEAR_DIAGONAL {
            // K(m+h, m−h) = K(m,m) + h² ∫_m^∞ (u Ai² − Ai′²) du + O(h⁴)
            let m = 0.5 * (x + y);
            let h = 0.5 * d;
            let (a, ap) = airy_pair_unchecked(m);
            let diag = ap * ap - m * a * a;
            let curvature = a * ap / 3.0 + 2.0 / 3.0 * (m * ap * ap - m * m * a * a);
            return diag + curvature * h * h;
        }
        let (ax, apx) = airy_pair_unchecked(x);
        let (ay, apy) = airy_pair_unchecked(y);
        (ax * apy - ay * apx) / d
    }

    fn natural_domain(&self) -> &'static str {
        "[-40, 20]"
    }

    fn gram(&self, nodes: &[f64]) -> Vec<f64> {
        let n = nodes.len();
        let pairs: Vec<(f64, f64)> = nodes.iter().map(|&x| airy_pair_unchecked(x)).collect();
        let mut g = vec![0.0; n * n];
        for i in 0..n {
            let (x, (ax, apx)) = (nodes[i], pairs[i]);
            g[i * n + i] = apx * apx - x * ax * ax;
            for j in i + 1..n {
                let y = nodes[j];
                let v = if (x - y).abs() < AIRY_NEAR_DIAGONAL {
                    self.evaluate(x, y)
                } else {
                    let (ay, apy) = pairs[j];
                    (ax * apy - ay * apx) / (x - y)
                };
                g[i * n + j] = v;
                g[j * n + i] = v;
            }
        }
        g
    }

    fn bandwidth(&self, a: f64, _b: f64) -> f64 {
        (-a).max(1.0).sqrt()
    }

    fn check_region(&self, a: f64, b: f64) -> Result<()> {
        if a < AIRY_DOMAIN.0 {
            return Err(Error::Domain {
                x: a,
                domain: "[-40, 20]",
            });
        }
        if b > AIRY_DOMAIN.1 {
            return Err(Error::Domain {
                x: b,
                domain: "[-40, 20]",
            });
        }
        Ok(())
    }
}

pub fn airy_kernel() -> KernelRef {
    Arc::new(AiryKernel)
}

/// Threshold on K(p,p) below which conditioning at p is refused.
pub const MIN_CONDITIONING_DIAGONAL: f64 = 1e-14;

/// K_p(x,y) = K(x,y) − K(x,p) K(p,y) / K(p,p): the kernel of the process
/// conditioned to have a point at p.
#[derive(Debug, Clone)]
pub struct DeflatedKernel {
    base: KernelRef,
    point: f64,
    base_diagonal: f64,
}

impl DeflatedKernel {
    pub fn point(&self) -> f64 {
        self.point
    }

    /// K(p,p) of the base kernel, i.e. the base density at the conditioning point.
    pub fn base_diagonal(&self) -> f64 {
        self.base_diagonal
    }
}

impl Kernel for DeflatedKernel {
    fn name(&self) -> String {
        format!("deflate({},{})", self.base.name(), self.point)
    }

    fn evaluate(&self, x: f64, y: f64) -> f64 {
        if x == self.point || y == self.point {
            return 0.0;
        }
        let kxp = self.base.evaluate(x, self.point);
        let kpy = self.base.evaluate(self.point, y);
        self.base.evaluate(x, y) - kxp * kpy / self.base_diagonal
    }

    fn symmetry(&self) -> Symmetry {
        self.base.symmetry()
    }

    fn natural_domain(&self) -> &'static str {
        self.base.natural_domain()
    }

    fn bandwidth(&self, a: f64, b: f64) -> f64 {
        self.base.bandwidth(a.min(self.point), b.max(self.point))
    }

    fn check_region(&self, a: f64, b: f64) -> Result<()> {
        self.base.check_region(a, b)
    }

    fn gram(&self, nodes: &[f64]) -> Vec<f64> {
        let n = nodes.len();
        let mut g = self.base.gram(nodes);
        let column: Vec<f64> = nodes
            .iter()
            .map(|&x| {
                if x == self.point {
                    0.0
                } else {
                    self.base.evaluate(x, self.point)
                }
            })
            .collect();
        for i in 0..n {
            for j in 0..n {
                g[i * n + j] -= column[i] * column[j] / self.base_diagonal;
            }
        }
        for (i, &x) in nodes.iter().enumerate() {
            if x == self.point {
                for j in 0..n {
                    g[i * n + j] = 0.0;
                    g[j * n + i] = 0.0;
                }
            }
        }
        g
    }
}

pub fn deflate(base: KernelRef, p: f64) -> Result<Arc<DeflatedKernel>> {
    if !p.is_finite() {
        return Err(Error::InvalidArgument(format!("conditioning point {p} is not finite")));
    }
    base.check_region(p, p)?;
    let diag = base.evaluate(p, p);
    if !(diag > MIN_CONDITIONING_DIAGONAL) {
        return Err(Error::DegenerateConditioning { p, diag });
    }
    Ok(Arc::new(DeflatedKernel {
        base,
        point: p,
        base_diagonal: diag,
    }))
}

/// Planar Ginibre kernel K(w,z) = (1/π) e^{−(|w|²+|z|²)/2} e^{w z̄}.
#[derive(Debug, Clone, Copy, Default)]
pub struct GinibreKernel;

impl GinibreKernel {
    pub fn name(&self) -> &'static str {
        "ginibre"
    }

    pub fn symmetry(&self) -> Symmetry {
        Symmetry::ComplexHermitian
    }

    pub fn evaluate(&self, w: Complex64, z: Complex64) -> Complex64 {
        // exponent −|w−z|²/2 + i Im(w z̄); the real parts cancel exactly
        let cross = w * z.conj();
        let modulus = (-(w - z).norm_sqr() / 2.0).exp() / PI;
        Complex64::from_polar(modulus, cross.im)
    }
}

pub fn ginibre_kernel() -> GinibreKernel {
    GinibreKernel
}
