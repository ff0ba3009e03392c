//! Small statistics helpers for Monte Carlo reporting.

#[allow(unused_imports)]
use num_traits::Float;

/// Two-sided 99% standard normal quantile.
pub const Z_99: f64 = 2.575_829_303_548_901;
/// One-sided 99.9% standard normal quantile.
pub const Z_999_ONE_SIDED: f64 = 3.090_232_306_167_813;

/// Wilson score interval for `successes` out of `trials`.
pub fn wilson_interval(successes: u64, trials: u64, z: f64) -> (f64, f64) {
    if trials == 0 {
        return (0.0, 1.0);
    }
    let n = trials as f64;
    let p = successes as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let centre = (p + z2 / (2.0 * n)) / denom;
    let half = z * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt() / denom;
    ((centre - half).max(0.0), (centre + half).min(1.0))
}

/// Pearson statistic `Σ (O − E)²/E`.
pub fn chi_square_statistic(observed: &[u64], expected: &[f64]) -> f64 {
    observed.iter().zip(expected).map(|(&o, &e)| (o as f64 - e) * (o as f64 - e) / e).sum()
}

/// Wilson–Hilferty approximation of the χ² quantile for `dof` degrees of
/// freedom at the one-sided normal quantile `z`.
pub fn chi_square_critical(dof: f64, z: f64) -> f64 {
    let a = 2.0 / (9.0 * dof);
    dof * (1.0 - a + z * a.sqrt()).powi(3)
}

/// Standard deviation of a Bernoulli sample mean.
pub fn bernoulli_sigma(p: f64, trials: u64) -> f64 {
    (p * (1.0 - p) / trials as f64).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wilson_contains_estimate() {
        let (lo, hi) = wilson_interval(50, 100, Z_99);
        assert!(lo < 0.5 && 0.5 < hi);
        assert!((lo - 0.3754).abs() < 1e-3, "{lo}");
        assert_eq!(wilson_interval(0, 0, Z_99), (0.0, 1.0));
        let (lo, hi) = wilson_interval(10, 10, Z_99);
        assert!(hi == 1.0 && lo > 0.5);
    }

    #[test]
    fn chi_square_quantiles() {
        // tabulated 99.9% quantile for 10 dof is 29.588
        assert!((chi_square_critical(10.0, Z_999_ONE_SIDED) - 29.588).abs() < 0.3);
        assert_eq!(chi_square_statistic(&[5, 5], &[5.0, 5.0]), 0.0);
    }
}
