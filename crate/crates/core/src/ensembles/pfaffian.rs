use super::kernel_counts;
use crate::counting::CountDistribution;
use crate::error::{Error, Result};
use crate::fredholm::auto_order;
use crate::kernels::{Parity, SineParityKernel};

/// Negative recursion values of this size are treated as roundoff.
const NEGATIVE_ROUNDOFF: f64 = 1e-10;

/// Normalization defect above which the GOE recursion is rejected.
const MAX_NORMALIZATION_DEFECT: f64 = 1e-8;

fn check_s(s: f64) -> Result<()> {
    if s > 0.0 && s.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("require s > 0, got {s}")))
    }
}

/// Count distribution E^±(·; (0, s)) of the parity-split sine process.
pub fn parity_distribution(parity: Parity, s: f64, order: Option<usize>) -> Result<CountDistribution> {
    check_s(s)?;
    let kernel = SineParityKernel { parity };
    let order = order.unwrap_or_else(|| auto_order(&kernel, 0.0, s));
    kernel_counts(&kernel, 0.0, s, Some(order))
}

/// E^±(n; (0, s)).
pub fn e_plus_minus(parity: Parity, n: usize, s: f64, order: Option<usize>) -> Result<f64> {
    Ok(parity_distribution(parity, s, order)?.get(n))
}

/// Bulk GSE: E₄(n; (0, s)) = ½ (E^+(n; (0, s)) + E^−(n; (0, s))).
pub fn gse_counts(s: f64, order: Option<usize>) -> Result<CountDistribution> {
    let plus = parity_distribution(Parity::Plus, s, order)?;
    let minus = parity_distribution(Parity::Minus, s, order)?;
    let len = plus.probabilities.len().max(minus.probabilities.len());
    let probabilities = (0..len).map(|n| 0.5 * (plus.get(n) + minus.get(n))).collect();
    Ok(CountDistribution::from_probabilities(probabilities))
}

/// Bulk GOE on (0, 2s), recovered term by term from E^± on (0, s).
pub fn goe_counts(s: f64, order: Option<usize>) -> Result<CountDistribution> {
    let plus = parity_distribution(Parity::Plus, s, order)?;
    let minus = parity_distribution(Parity::Minus, s, order)?;
    goe_from_parity(&plus, &minus)
}

/// E₁(0) = E^+(0); E₁(2n) = E^+(n) − E₁(2n−1); E₁(2n+1) = E^−(n) − E₁(2n).
pub(crate) fn goe_from_parity(
    plus: &CountDistribution,
    minus: &CountDistribution,
) -> Result<CountDistribution> {
    let len = 2 * plus.probabilities.len().max(minus.probabilities.len());
    let mut e = Vec::with_capacity(len);
    e.push(plus.get(0));
    for m in 1..len {
        let prev = e[m - 1];
        let next = if m % 2 == 0 {
            plus.get(m / 2) - prev
        } else {
            minus.get(m / 2) - prev
        };
        e.push(next);
    }
    for (m, v) in e.iter_mut().enumerate() {
        if *v < 0.0 {
            if -*v >= NEGATIVE_ROUNDOFF {
                return Err(Error::Convention(format!(
                    "recursion produced E1({m}) = {v:e}"
                )));
            }
            *v = 0.0;
        }
    }
    while e.len() > 1 && *e.last().unwrap() == 0.0 {
        e.pop();
    }
    let total: f64 = e.iter().sum();
    if (total - 1.0).abs() >= MAX_NORMALIZATION_DEFECT {
        return Err(Error::Convention(format!(
            "recursion total {total} deviates from 1"
        )));
    }
    Ok(CountDistribution::from_probabilities(
        e.into_iter().map(|v| v / total).collect(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gse_is_average_of_parity_laws() {
        let s = 10.0;
        let plus = parity_distribution(Parity::Plus, s, None).unwrap();
        let minus = parity_distribution(Parity::Minus, s, None).unwrap();
        let gse = gse_counts(s, None).unwrap();
        for n in 0..gse.probabilities.len() {
            assert!((2.0 * gse.get(n) - plus.get(n) - minus.get(n)).abs() < 1e-12);
        }
        assert!((gse.total() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn parity_means_straddle_s() {
        // ∫₀^s ± sin(2πx)/(2πx) dx → ±1/4
        let plus = parity_distribution(Parity::Plus, 10.0, None).unwrap();
        let minus = parity_distribution(Parity::Minus, 10.0, None).unwrap();
        assert!((plus.mu - 10.25).abs() < 0.01, "{}", plus.mu);
        assert!((minus.mu - 9.75).abs() < 0.01, "{}", minus.mu);
        assert!((0.5 * (plus.mu + minus.mu) - 10.0).abs() < 1e-9);
    }

    #[test]
    fn goe_recursion_reproduces_parity_sums() {
        let s = 5.0;
        let plus = parity_distribution(Parity::Plus, s, None).unwrap();
        let minus = parity_distribution(Parity::Minus, s, None).unwrap();
        let goe = goe_counts(s, None).unwrap();
        assert!((goe.total() - 1.0).abs() < 1e-9);
        for n in 0..plus.probabilities.len() {
            let pair = goe.get(2 * n) + if n > 0 { goe.get(2 * n - 1) } else { 0.0 };
            assert!((pair - plus.get(n)).abs() < 1e-9, "n={n}");
            assert!((goe.get(2 * n) + goe.get(2 * n + 1) - minus.get(n)).abs() < 1e-9);
        }
    }

    #[test]
    fn wrong_seed_is_detected() {
        // swapping the parity roles produces large negative entries
        let plus = parity_distribution(Parity::Plus, 5.0, None).unwrap();
        let minus = parity_distribution(Parity::Minus, 5.0, None).unwrap();
        assert!(matches!(
            goe_from_parity(&minus, &plus),
            Err(Error::Convention(_))
        ));
    }

    #[test]
    fn rejects_nonpositive_s() {
        assert!(gse_counts(0.0, None).is_err());
        assert!(goe_counts(-2.0, None).is_err());
    }
}
