//! Scalar special functions: Airy Ai/Ai′, the regularized lower incomplete
//! gamma function at integer order, and the standard Gaussian pdf/cdf.

use crate::error::{Error, Result};
use std::f64::consts::{FRAC_1_SQRT_2, PI};

/// Interval on which the Airy routines meet their accuracy contract.
pub const AIRY_DOMAIN: (f64, f64) = (-40.0, 20.0);

/// Accuracy advertised for a special function on its valid range.
///
/// Values satisfy the absolute *or* the relative tolerance, whichever is looser.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AccuracyContract {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub valid_range: (f64, f64),
}

impl AccuracyContract {
    pub fn accepts(&self, got: f64, reference: f64) -> bool {
        let err = (got - reference).abs();
        err <= self.abs_tol || err <= self.rel_tol * reference.abs()
    }
}

pub const AIRY_NONPOSITIVE_CONTRACT: AccuracyContract = AccuracyContract {
    abs_tol: 1e-11,
    rel_tol: 0.0,
    valid_range: (AIRY_DOMAIN.0, 0.0),
};

pub const AIRY_POSITIVE_CONTRACT: AccuracyContract = AccuracyContract {
    abs_tol: 0.0,
    rel_tol: 1e-10,
    valid_range: (0.0, AIRY_DOMAIN.1),
};

// Ai(0) and -Ai'(0) as unevaluated double-double sums.
const AI0: Dd = Dd(0.3550280538878172, 2.05233632436212e-17);
const NEG_AIP0: Dd = Dd(0.2588194037928068, -2.522243111610832e-17);

// Maclaurin range. Outside it the asymptotic series are accurate to roundoff.
const SERIES_LO: f64 = -10.0;
const SERIES_HI: f64 = 8.0;

/// Double-double number `hi + lo` with |lo| ≤ ulp(hi)/2.
#[derive(Debug, Clone, Copy)]
struct Dd(f64, f64);

impl Dd {
    fn from(x: f64) -> Self {
        Dd(x, 0.0)
    }

    fn two_sum(a: f64, b: f64) -> Self {
        let s = a + b;
        let bb = s - a;
        let e = (a - (s - bb)) + (b - bb);
        Dd(s, e)
    }

    fn quick_two_sum(a: f64, b: f64) -> Self {
        let s = a + b;
        Dd(s, b - (s - a))
    }

    fn add(self, o: Dd) -> Dd {
        let s = Dd::two_sum(self.0, o.0);
        let t = Dd::two_sum(self.1, o.1);
        let s = Dd::quick_two_sum(s.0, s.1 + t.0);
        Dd::quick_two_sum(s.0, s.1 + t.1)
    }

    fn neg(self) -> Dd {
        Dd(-self.0, -self.1)
    }

    fn mul(self, o: Dd) -> Dd {
        let p = self.0 * o.0;
        let e = self.0.mul_add(o.0, -p);
        Dd::quick_two_sum(p, e + (self.0 * o.1 + self.1 * o.0))
    }

    fn div_f64(self, d: f64) -> Dd {
        let q1 = self.0 / d;
        let p = q1 * d;
        let e = q1.mul_add(d, -p);
        let r = (self.0 - p - e + self.1) / d;
        Dd::quick_two_sum(q1, r)
    }

    fn to_f64(self) -> f64 {
        self.0 + self.1
    }
}

/// Ai and Ai′ from the two Maclaurin branches, summed in double-double.
fn airy_maclaurin(x: f64) -> (f64, f64) {
    let xd = Dd::from(x);
    let x3 = xd.mul(xd).mul(xd);

    // f = Σ t_k, f' = Σ s_k, g = Σ u_k, g' = Σ v_k
    let mut t = Dd::from(1.0);
    let mut s = xd.mul(xd).div_f64(2.0);
    let mut u = xd;
    let mut v = Dd::from(1.0);
    let (mut f, mut fp, mut g, mut gp) = (t, s, u, v);
    for k in 1..200 {
        let k3 = 3.0 * k as f64;
        t = t.mul(x3).div_f64((k3 - 1.0) * k3);
        s = s.mul(x3).div_f64(k3 * (k3 + 2.0));
        u = u.mul(x3).div_f64(k3 * (k3 + 1.0));
        v = v.mul(x3).div_f64((k3 - 2.0) * k3);
        f = f.add(t);
        fp = fp.add(s);
        g = g.add(u);
        gp = gp.add(v);
        let tail = t.0.abs().max(s.0.abs()).max(u.0.abs()).max(v.0.abs());
        if tail < 1e-34 && k3 > x.abs() {
            break;
        }
    }
    let ai = AI0.mul(f).add(NEG_AIP0.mul(g).neg());
    let aip = AI0.mul(fp).add(NEG_AIP0.mul(gp).neg());
    (ai.to_f64(), aip.to_f64())
}

/// Coefficients u_k of the Airy asymptotic expansions and v_k = -(6k+1)/(6k-1) u_k.
fn asymptotic_coefficients(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut u = Vec::with_capacity(n);
    let mut v = Vec::with_capacity(n);
    u.push(1.0);
    v.push(1.0);
    for k in 1..n {
        let kf = k as f64;
        let prev = u[k - 1];
        let next = prev * (6.0 * kf - 5.0) * (6.0 * kf - 3.0) * (6.0 * kf - 1.0)
            / ((2.0 * kf - 1.0) * 216.0 * kf);
        u.push(next);
        v.push(-(6.0 * kf + 1.0) / (6.0 * kf - 1.0) * next);
    }
    (u, v)
}

const ASYMPTOTIC_TERMS: usize = 40;

/// Sum Σ sign_k c_k ζ^{-k} over indices `start, start+2, ...`, stopping at the
/// smallest term.
fn asymptotic_sum(coef: &[f64], zeta: f64, start: usize, step: usize, alternate: bool) -> f64 {
    let mut sum = 0.0;
    let mut last = f64::INFINITY;
    let mut sign = 1.0;
    let mut k = start;
    while k < coef.len() {
        let term = coef[k] / zeta.powi(k as i32);
        if term.abs() > last {
            break;
        }
        sum += sign * term;
        last = term.abs();
        if term.abs() < 1e-17 * sum.abs() {
            break;
        }
        if alternate {
            sign = -sign;
        }
        k += step;
    }
    sum
}

fn airy_asymptotic_positive(x: f64) -> (f64, f64) {
    let (u, v) = asymptotic_coefficients(ASYMPTOTIC_TERMS);
    let zeta = 2.0 / 3.0 * x * x.sqrt();
    let x14 = x.sqrt().sqrt();
    let e = (-zeta).exp() / (2.0 * PI.sqrt());
    // alternating signs (-1)^k
    let su = asymptotic_sum(&u, zeta, 0, 1, true);
    let sv = asymptotic_sum(&v, zeta, 0, 1, true);
    (e / x14 * su, -x14 * e * sv)
}

fn airy_asymptotic_negative(x: f64) -> (f64, f64) {
    let (u, v) = asymptotic_coefficients(ASYMPTOTIC_TERMS);
    let ax = -x;
    let zeta = 2.0 / 3.0 * ax * ax.sqrt();
    let x14 = ax.sqrt().sqrt();
    let phase = zeta + PI / 4.0;
    let (sn, cs) = phase.sin_cos();
    let u_even = asymptotic_sum(&u, zeta, 0, 2, true);
    let u_odd = asymptotic_sum(&u, zeta, 1, 2, true);
    let v_even = asymptotic_sum(&v, zeta, 0, 2, true);
    let v_odd = asymptotic_sum(&v, zeta, 1, 2, true);
    let ai = (sn * u_even - cs * u_odd) / (PI.sqrt() * x14);
    let aip = -x14 / PI.sqrt() * (cs * v_even + sn * v_odd);
    (ai, aip)
}

/// (Ai(x), Ai′(x)) without a domain check. Finite for all finite x, but the
/// accuracy contract only covers [`AIRY_DOMAIN`].
pub(crate) fn airy_pair_unchecked(x: f64) -> (f64, f64) {
    if x > SERIES_HI {
        airy_asymptotic_positive(x)
    } else if x < SERIES_LO {
        airy_asymptotic_negative(x)
    } else {
        airy_maclaurin(x)
    }
}

fn check_airy_domain(x: f64) -> Result<()> {
    if x.is_finite() && (AIRY_DOMAIN.0..=AIRY_DOMAIN.1).contains(&x) {
        Ok(())
    } else {
        Err(Error::Domain {
            x,
            domain: "[-40, 20]",
        })
    }
}

/// (Ai(x), Ai′(x)) on [-40, 20].
pub fn airy_pair(x: f64) -> Result<(f64, f64)> {
    check_airy_domain(x)?;
    Ok(airy_pair_unchecked(x))
}

pub fn airy_ai(x: f64) -> Result<f64> {
    airy_pair(x).map(|p| p.0)
}

pub fn airy_ai_prime(x: f64) -> Result<f64> {
    airy_pair(x).map(|p| p.1)
}

/// ln(n!) by direct summation for small n, Stirling series beyond.
pub fn ln_factorial(n: u64) -> f64 {
    if n < 256 {
        (2..=n).map(|k| (k as f64).ln()).sum()
    } else {
        let x = n as f64 + 1.0;
        // ln Γ(x) Stirling with three correction terms
        (x - 0.5) * x.ln() - x + 0.5 * (2.0 * PI).ln() + 1.0 / (12.0 * x)
            - 1.0 / (360.0 * x.powi(3))
            + 1.0 / (1260.0 * x.powi(5))
    }
}

/// Regularized lower incomplete gamma P(a, x) for integer `a ≥ 1`:
/// `1 - e^{-x} Σ_{j<a} x^j / j!`.
pub fn regularized_lower_gamma(a: u64, x: f64) -> Result<f64> {
    if a == 0 {
        return Err(Error::InvalidArgument(
            "regularized_lower_gamma requires a >= 1".into(),
        ));
    }
    if !(x >= 0.0) {
        return Err(Error::InvalidArgument(format!(
            "regularized_lower_gamma requires x >= 0, got {x}"
        )));
    }
    if x == 0.0 {
        return Ok(0.0);
    }
    let af = a as f64;
    if x.is_infinite() {
        return Ok(1.0);
    }
    if x < af {
        // P = e^{-x} Σ_{j≥a} x^j/j!, terms decrease geometrically
        let log_lead = af * x.ln() - x - ln_factorial(a);
        let mut term = 1.0;
        let mut sum = 1.0;
        let mut j = af;
        loop {
            j += 1.0;
            term *= x / j;
            sum += term;
            if term < 1e-17 * sum {
                break;
            }
        }
        Ok((log_lead + sum.ln()).exp().min(1.0))
    } else {
        // Q = e^{-x} Σ_{j<a} x^j/j!, summed downward from the largest term
        let log_lead = (af - 1.0) * x.ln() - x - ln_factorial(a - 1);
        let mut term = 1.0;
        let mut sum = 1.0;
        let mut j = af - 1.0;
        while j > 0.0 {
            term *= j / x;
            sum += term;
            if term < 1e-17 * sum {
                break;
            }
            j -= 1.0;
        }
        let q = (log_lead + sum.ln()).exp();
        Ok((1.0 - q).clamp(0.0, 1.0))
    }
}

pub fn gaussian_pdf(x: f64) -> f64 {
    (-0.5 * x * x).exp() / (2.0 * PI).sqrt()
}

/// erfc(z) for z ≥ 0.
fn erfc_nonnegative(z: f64) -> f64 {
    if z == 0.0 {
        1.0
    } else if z < 3.0 {
        // erf(z) = 2/√π e^{-z²} Σ (2z²)^n z / (1·3·…·(2n+1)), all terms positive
        let z2 = z * z;
        let mut term = z;
        let mut sum = z;
        let mut n = 0.0;
        loop {
            n += 1.0;
            term *= 2.0 * z2 / (2.0 * n + 1.0);
            sum += term;
            if term < 1e-17 * sum {
                break;
            }
        }
        1.0 - 2.0 / PI.sqrt() * (-z2).exp() * sum
    } else {
        // continued fraction erfc(z) = e^{-z²}/√π · 1/(z + (1/2)/(z + 1/(z + (3/2)/(z + …))))
        // evaluated by modified Lentz
        let tiny = 1e-300;
        let mut f = z;
        let mut c = z;
        let mut d = 0.0;
        for n in 1..500 {
            let an = n as f64 / 2.0;
            d = z + an * d;
            if d.abs() < tiny {
                d = tiny;
            }
            c = z + an / c;
            if c.abs() < tiny {
                c = tiny;
            }
            d = 1.0 / d;
            let delta = c * d;
            f *= delta;
            if (delta - 1.0).abs() < 1e-16 {
                break;
            }
        }
        (-z * z).exp() / PI.sqrt() / f
    }
}

pub fn gaussian_cdf(x: f64) -> f64 {
    let z = x.abs() * FRAC_1_SQRT_2;
    let tail = 0.5 * erfc_nonnegative(z);
    if x >= 0.0 {
        1.0 - tail
    } else {
        tail
    }
}
