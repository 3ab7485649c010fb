//! Exact counting distributions from a spectrum, and the Gaussian-limit
//! diagnostics.
//!
//! The count N(J) is a sum of independent Bernoulli variables with success
//! probabilities λ_l(J), so E(k; J) is the coefficient of z^k in
//! Π_l (1 − λ_l + λ_l z).

use crate::error::{Error, Result};
use crate::fredholm::Spectrum;
use crate::special::{gaussian_cdf, gaussian_pdf};
use std::sync::Arc;

/// Default floor below which entries are excluded from the log-concavity test.
pub const DEFAULT_LOG_CONCAVITY_FLOOR: f64 = 1e-14;

/// Relative slack in E(k)² ≥ E(k−1)E(k+1).
pub const LOG_CONCAVITY_SLACK: f64 = 1e-10;

/// Entries at or below this are treated as outside the support by the LCLT sup.
pub const LCLT_SUPPORT_FLOOR: f64 = 1e-300;

#[derive(Debug, Clone)]
pub struct CountDistribution {
    /// E(k) for k = 0, 1, …
    pub probabilities: Vec<f64>,
    pub mu: f64,
    pub sigma2: f64,
    pub source: Option<Arc<Spectrum>>,
}

impl CountDistribution {
    /// Wraps arbitrary probabilities, computing mean and variance from them.
    pub fn from_probabilities(probabilities: Vec<f64>) -> Self {
        let (mu, sigma2) = moments(&probabilities);
        Self {
            probabilities,
            mu,
            sigma2,
            source: None,
        }
    }

    pub fn with_source(mut self, spectrum: Arc<Spectrum>) -> Self {
        self.source = Some(spectrum);
        self
    }

    pub fn get(&self, k: usize) -> f64 {
        self.probabilities.get(k).copied().unwrap_or(0.0)
    }

    pub fn sigma(&self) -> f64 {
        self.sigma2.sqrt()
    }

    pub fn total(&self) -> f64 {
        self.probabilities.iter().sum()
    }

    /// Mean and variance computed from the probabilities themselves.
    pub fn empirical_moments(&self) -> (f64, f64) {
        moments(&self.probabilities)
    }
}

fn moments(p: &[f64]) -> (f64, f64) {
    let mu: f64 = p.iter().enumerate().map(|(k, &e)| k as f64 * e).sum();
    let var = p
        .iter()
        .enumerate()
        .map(|(k, &e)| (k as f64 - mu).powi(2) * e)
        .sum();
    (mu, var)
}

fn check_probabilities(lambdas: &[f64]) -> Result<()> {
    match lambdas.iter().find(|l| !(0.0..=1.0).contains(*l)) {
        Some(bad) => Err(Error::InvalidArgument(format!(
            "Bernoulli probability {bad} outside [0, 1]"
        ))),
        None => Ok(()),
    }
}

/// μ = Σλ, σ² = Σλ(1−λ).
pub fn mean_variance(lambdas: &[f64]) -> Result<(f64, f64)> {
    check_probabilities(lambdas)?;
    Ok(lambdas
        .iter()
        .fold((0.0, 0.0), |(m, v), &l| (m + l, v + l * (1.0 - l))))
}

/// Poisson-binomial distribution of Σ Bernoulli(λ_l), by iterative
/// convolution in increasing-λ order.
pub fn poisson_binomial(lambdas: &[f64]) -> Result<CountDistribution> {
    let (mu, sigma2) = mean_variance(lambdas)?;
    let mut sorted = lambdas.to_vec();
    sorted.sort_by(|a, b| a.total_cmp(b));
    let mut e = Vec::with_capacity(sorted.len() + 1);
    e.push(1.0);
    for &l in &sorted {
        let q = 1.0 - l;
        e.push(0.0);
        for k in (1..e.len()).rev() {
            e[k] = q * e[k] + l * e[k - 1];
        }
        e[0] *= q;
    }
    Ok(CountDistribution {
        probabilities: e,
        mu,
        sigma2,
        source: None,
    })
}

/// Counting distribution of a spectrum, after dropping negligible eigenvalues.
pub fn count_distribution(spectrum: Arc<Spectrum>) -> Result<CountDistribution> {
    let retained = spectrum.retained()?;
    Ok(poisson_binomial(&retained)?.with_source(spectrum))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogConcavity {
    pub holds: bool,
    /// Smallest interior k at which E(k)² < E(k−1)E(k+1).
    pub first_violation: Option<usize>,
}

/// Checks E(k)² ≥ E(k−1)E(k+1)(1 − 1e−10) at every interior k whose three
/// entries are all at least `floor`.
pub fn log_concavity_check(dist: &CountDistribution, floor: f64) -> LogConcavity {
    let p = &dist.probabilities;
    let first_violation = (1..p.len().saturating_sub(1)).find(|&k| {
        let (a, b, c) = (p[k - 1], p[k], p[k + 1]);
        a >= floor && b >= floor && c >= floor && b * b < a * c * (1.0 - LOG_CONCAVITY_SLACK)
    });
    LogConcavity {
        holds: first_violation.is_none(),
        first_violation,
    }
}

fn nondegenerate_sigma(dist: &CountDistribution) -> Result<f64> {
    if dist.sigma2 > 0.0 {
        Ok(dist.sigma())
    } else {
        Err(Error::DegenerateDistribution)
    }
}

/// sup_k |σ E(k) − φ((k − μ)/σ)| over the support.
pub fn lclt_distance(dist: &CountDistribution) -> Result<f64> {
    let sigma = nondegenerate_sigma(dist)?;
    Ok(dist
        .probabilities
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > LCLT_SUPPORT_FLOOR)
        .map(|(k, &e)| (sigma * e - gaussian_pdf((k as f64 - dist.mu) / sigma)).abs())
        .fold(0.0, f64::max))
}

/// Kolmogorov distance between the count cdf and the Gaussian cdf, evaluated
/// at both one-sided limits of every jump.
pub fn clt_distance(dist: &CountDistribution) -> Result<f64> {
    let sigma = nondegenerate_sigma(dist)?;
    let mut below = 0.0;
    let mut sup: f64 = 0.0;
    for (k, &e) in dist.probabilities.iter().enumerate() {
        let phi = gaussian_cdf((k as f64 - dist.mu) / sigma);
        let above = below + e;
        sup = sup.max((below - phi).abs()).max((above - phi).abs());
        below = above;
    }
    Ok(sup)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LcltRow {
    pub k: usize,
    pub probability: f64,
    /// Gaussian approximation φ((k − μ)/σ)/σ.
    pub gaussian: f64,
    pub difference: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LcltReport {
    pub lclt_sup: f64,
    pub clt_sup: f64,
    pub per_k: Vec<LcltRow>,
    pub log_concave: bool,
    pub floor_used: f64,
}

pub fn lclt_report(dist: &CountDistribution, floor: f64) -> Result<LcltReport> {
    let sigma = nondegenerate_sigma(dist)?;
    let per_k = dist
        .probabilities
        .iter()
        .enumerate()
        .map(|(k, &e)| {
            let gaussian = gaussian_pdf((k as f64 - dist.mu) / sigma) / sigma;
            LcltRow {
                k,
                probability: e,
                gaussian,
                difference: e - gaussian,
            }
        })
        .collect();
    Ok(LcltReport {
        lclt_sup: lclt_distance(dist)?,
        clt_sup: clt_distance(dist)?,
        per_k,
        log_concave: log_concavity_check(dist, floor).holds,
        floor_used: floor,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// 2ⁿ subset enumeration.
    fn brute_force(lambdas: &[f64]) -> Vec<f64> {
        let n = lambdas.len();
        let mut e = vec![0.0; n + 1];
        for mask in 0u32..(1 << n) {
            let mut p = 1.0;
            for (i, &l) in lambdas.iter().enumerate() {
                p *= if mask >> i & 1 == 1 { l } else { 1.0 - l };
            }
            e[mask.count_ones() as usize] += p;
        }
        e
    }

    fn dist(l: &[f64]) -> CountDistribution {
        poisson_binomial(l).unwrap()
    }

    #[test]
    fn convolution_examples() {
        assert_eq!(dist(&[]).probabilities, vec![1.0]);
        assert_eq!(dist(&[0.5, 0.5]).probabilities, vec![0.25, 0.5, 0.25]);
        let d = dist(&[1.0, 0.3]);
        assert_eq!(d.probabilities.len(), 3);
        assert!(d.probabilities[0].abs() < 1e-16);
        assert!((d.probabilities[1] - 0.7).abs() < 1e-16);
        assert!((d.probabilities[2] - 0.3).abs() < 1e-16);
        assert!(matches!(
            poisson_binomial(&[0.2, 1.1]),
            Err(Error::InvalidArgument(_))
        ));
        assert!(poisson_binomial(&[-0.1]).is_err());
    }

    #[test]
    fn moments_examples() {
        assert_eq!(mean_variance(&[0.5, 0.5]).unwrap(), (1.0, 0.5));
        assert_eq!(mean_variance(&[1.0, 1.0, 1.0]).unwrap(), (3.0, 0.0));
    }

    #[test]
    fn log_concavity_examples() {
        let sym = CountDistribution::from_probabilities(vec![0.25, 0.5, 0.25]);
        assert!(log_concavity_check(&sym, 1e-14).holds);
        let bad = CountDistribution::from_probabilities(vec![0.1, 0.01, 0.1]);
        let r = log_concavity_check(&bad, 1e-14);
        assert!(!r.holds);
        assert_eq!(r.first_violation, Some(1));
        // entries below the floor are ignored
        let tail = CountDistribution::from_probabilities(vec![1e-20, 1e-30, 1e-20, 0.5]);
        assert!(log_concavity_check(&tail, 1e-14).holds);
    }

    #[test]
    fn lclt_examples() {
        // single fair coin: E(0) = E(1) = ½, μ = σ = ½
        let d = dist(&[0.5]);
        let expected = 0.25 - gaussian_pdf(1.0);
        assert!((lclt_distance(&d).unwrap() - expected).abs() < 1e-15);
        assert!((expected - 0.008029).abs() < 1e-6);

        // GUE E(10; (0, 10)) with σ = 0.761 against φ(0)
        let contribution: f64 = (0.761 * 0.5202 - gaussian_pdf(0.0)).abs();
        assert!((contribution - 0.0030).abs() < 1e-4);

        assert!(matches!(
            lclt_distance(&dist(&[1.0, 1.0])),
            Err(Error::DegenerateDistribution)
        ));
    }

    #[test]
    fn binomial_approaches_gaussian_density() {
        let d = dist(&vec![0.5; 10_000]);
        let dist_sup = lclt_distance(&d).unwrap();
        assert!(dist_sup <= 5e-3, "{dist_sup}");
        assert!((d.total() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn clt_examples() {
        // {1, 1, ½}: E = (0, 0, ½, ½), μ = 2.5, σ = ½; worst gap ½ − Φ(−1)
        let d = dist(&[1.0, 1.0, 0.5]);
        let expected = 0.5 - gaussian_cdf(-1.0);
        assert!((clt_distance(&d).unwrap() - expected).abs() < 1e-15);
        assert!((expected - 0.3413447461).abs() < 1e-9);

        // two fair coins: F jumps from ¼ to ¾ at k = 1 where Φ(0) = ½
        let d = dist(&[0.5, 0.5]);
        assert!((clt_distance(&d).unwrap() - 0.25).abs() < 1e-15);

        assert!(clt_distance(&dist(&[0.0, 1.0])).is_err());
    }

    #[test]
    fn report_rows_are_consistent() {
        let d = dist(&[0.9, 0.7, 0.5, 0.2, 0.1]);
        let r = lclt_report(&d, DEFAULT_LOG_CONCAVITY_FLOOR).unwrap();
        assert_eq!(r.per_k.len(), 6);
        let sigma = d.sigma();
        let sup = r
            .per_k
            .iter()
            .map(|row| sigma * row.difference.abs())
            .fold(0.0, f64::max);
        assert!((sup - r.lclt_sup).abs() < 1e-15);
        assert!(r.log_concave);
        assert_eq!(r.floor_used, DEFAULT_LOG_CONCAVITY_FLOOR);
    }

    #[test]
    fn twelve_random_lambdas_match_enumeration() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(12);
        let l: Vec<f64> = (0..12).map(|_| rng.gen::<f64>()).collect();
        let fast = dist(&l).probabilities;
        let slow = brute_force(&l);
        for (a, b) in fast.iter().zip(&slow) {
            assert!((a - b).abs() < 1e-13);
        }
    }

    proptest! {
        #[test]
        fn matches_brute_force(l in prop::collection::vec(0.0f64..=1.0, 0..=16)) {
            let fast = dist(&l);
            let slow = brute_force(&l);
            prop_assert_eq!(fast.probabilities.len(), slow.len());
            for (a, b) in fast.probabilities.iter().zip(&slow) {
                prop_assert!((a - b).abs() < 1e-13);
            }
        }

        #[test]
        fn distribution_invariants(l in prop::collection::vec(0.0f64..=1.0, 0..=60)) {
            let d = dist(&l);
            prop_assert!(d.probabilities.iter().all(|&p| p >= 0.0));
            prop_assert!((d.total() - 1.0).abs() < 1e-12);
            let (m, v) = d.empirical_moments();
            prop_assert!((m - d.mu).abs() < 1e-10 * d.mu.max(1.0));
            prop_assert!((v - d.sigma2).abs() < 1e-9 * d.sigma2.max(1.0));
            prop_assert!(log_concavity_check(&d, DEFAULT_LOG_CONCAVITY_FLOOR).holds);
        }

        #[test]
        fn permutation_invariant(l in prop::collection::vec(0.0f64..=1.0, 1..=30), seed in any::<u64>()) {
            use rand::seq::SliceRandom;
            use rand::SeedableRng;
            let mut shuffled = l.clone();
            shuffled.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
            let a = dist(&l);
            let b = dist(&shuffled);
            for (x, y) in a.probabilities.iter().zip(&b.probabilities) {
                prop_assert!((x - y).abs() <= 1e-13);
            }
        }

        #[test]
        fn reflected_spectrum_is_symmetric(half in prop::collection::vec(0.0f64..=1.0, 0..=20)) {
            let mut l = half.clone();
            l.extend(half.iter().map(|x| 1.0 - x));
            let d = dist(&l);
            let n = d.probabilities.len() - 1;
            for k in 0..=n {
                prop_assert!((d.probabilities[k] - d.probabilities[n - k]).abs() < 1e-12);
            }
        }
    }
}
