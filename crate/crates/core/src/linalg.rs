//! Dense symmetric and Hermitian eigenvalue solvers.
//!
//! Householder reduction to tridiagonal form followed by the implicit QL
//! iteration with Wilkinson shifts. Only eigenvalues are computed.

use crate::error::{Error, Result};
use num_complex::Complex64;

/// Dense row-major symmetric matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricMatrix {
    n: usize,
    data: Vec<f64>,
}

impl SymmetricMatrix {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![0.0; n * n],
        }
    }

    /// Builds the matrix from its upper triangle; `f(i, j)` is called for `i <= j`.
    pub fn from_upper<F: FnMut(usize, usize) -> f64>(n: usize, mut f: F) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in i..n {
                let v = f(i, j);
                m.data[i * n + j] = v;
                m.data[j * n + i] = v;
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    pub fn trace(&self) -> f64 {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    /// Σ_ij A_ij², which equals tr(A²) for a symmetric matrix.
    pub fn trace_of_square(&self) -> f64 {
        self.data.iter().map(|v| v * v).sum()
    }

    /// Eigenvalues sorted in descending order.
    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        let (mut d, mut e) = tridiagonalize(self.clone());
        implicit_ql(&mut d, &mut e)?;
        d.sort_by(|a, b| b.total_cmp(a));
        Ok(d)
    }
}

/// Householder reduction. Returns the diagonal and the subdiagonal, the
/// latter padded with a trailing zero.
fn tridiagonalize(mut a: SymmetricMatrix) -> (Vec<f64>, Vec<f64>) {
    let n = a.n;
    let mut d = vec![0.0; n];
    let mut e = vec![0.0; n];
    let mut v = vec![0.0; n];
    let mut w = vec![0.0; n];
    for k in 0..n.saturating_sub(2) {
        let norm: f64 = (k + 1..n).map(|i| a.data[i * n + k].powi(2)).sum::<f64>().sqrt();
        d[k] = a.data[k * n + k];
        let x0 = a.data[(k + 1) * n + k];
        if norm == 0.0 {
            e[k] = 0.0;
            continue;
        }
        let alpha = if x0 > 0.0 { -norm } else { norm };
        for i in k + 1..n {
            v[i] = a.data[i * n + k];
        }
        v[k + 1] -= alpha;
        let vnorm: f64 = (k + 1..n).map(|i| v[i] * v[i]).sum::<f64>().sqrt();
        if vnorm == 0.0 {
            e[k] = x0;
            continue;
        }
        for i in k + 1..n {
            v[i] /= vnorm;
        }
        // p = A v on the trailing block
        for i in k + 1..n {
            let row = &a.data[i * n..(i + 1) * n];
            w[i] = (k + 1..n).map(|j| row[j] * v[j]).sum();
        }
        let vp: f64 = (k + 1..n).map(|i| v[i] * w[i]).sum();
        for i in k + 1..n {
            w[i] -= vp * v[i];
        }
        // A ← A − 2 v wᵀ − 2 w vᵀ
        for i in k + 1..n {
            let (vi, wi) = (v[i], w[i]);
            let row = &mut a.data[i * n..(i + 1) * n];
            for j in k + 1..n {
                row[j] -= 2.0 * (vi * w[j] + wi * v[j]);
            }
        }
        e[k] = alpha;
    }
    if n >= 2 {
        d[n - 2] = a.data[(n - 2) * n + (n - 2)];
        e[n - 2] = a.data[(n - 1) * n + (n - 2)];
    }
    if n >= 1 {
        d[n - 1] = a.data[(n - 1) * n + (n - 1)];
    }
    (d, e)
}

/// Implicit QL on a symmetric tridiagonal matrix; `d` is overwritten with the
/// eigenvalues (unsorted).
fn implicit_ql(d: &mut [f64], e: &mut [f64]) -> Result<()> {
    let n = d.len();
    if n == 0 {
        return Ok(());
    }
    e[n - 1] = 0.0;
    let norm = d
        .iter()
        .zip(e.iter())
        .map(|(a, b)| a.abs() + b.abs())
        .fold(0.0, f64::max);
    // absolute floor keeps the backward error at ε‖T‖ for clusters near zero
    let floor = f64::EPSILON * norm;
    for l in 0..n {
        let mut iterations = 0;
        loop {
            let mut m = l;
            while m < n - 1 {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd || e[m].abs() <= floor {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iterations += 1;
            if iterations > 200 {
                return Err(Error::InvalidArgument(
                    "tridiagonal QL iteration failed to converge".into(),
                ));
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut deflated = false;
            let mut i = m;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if deflated {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok(())
}

/// Eigenvalues of a complex Hermitian matrix given by its row-major entries,
/// sorted descending.
///
/// Uses the real symmetric embedding `[[Re, -Im], [Im, Re]]`, whose spectrum is
/// the Hermitian spectrum with every eigenvalue doubled.
pub fn hermitian_eigenvalues(n: usize, entries: &[Complex64]) -> Result<Vec<f64>> {
    if entries.len() != n * n {
        return Err(Error::InvalidArgument(format!(
            "expected {} entries for a {n}x{n} matrix, got {}",
            n * n,
            entries.len()
        )));
    }
    let embedded = SymmetricMatrix::from_upper(2 * n, |i, j| {
        let (bi, ri) = (i / n, i % n);
        let (bj, rj) = (j / n, j % n);
        let z = entries[ri * n + rj];
        match (bi, bj) {
            (0, 0) | (1, 1) => z.re,
            (0, 1) => -z.im,
            _ => z.im,
        }
    });
    let doubled = embedded.eigenvalues()?;
    Ok(doubled.into_iter().step_by(2).collect())
}
