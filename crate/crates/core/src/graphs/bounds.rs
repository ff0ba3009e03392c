//! Exact integer checks of the eigenvalue bounds for `B_{n,2}`.

use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::One;

use super::dual_polar::valency;
use crate::lattice::counting::{pow2_choose2, qbinomial};

fn pow2(e: u64) -> BigUint {
    BigUint::one() << e
}

fn choose2(k: u64) -> u64 {
    k * k.saturating_sub(1) / 2
}

/// `Q(i) = 2(n−i−2) + i(n−i) + C(i,2)` for `0 ≤ i ≤ n−2`.
pub fn q_exponent(n: u64, i: u64) -> u64 {
    2 * (n - i - 2) + i * (n - i) + choose2(i)
}

/// The q-binomial sandwich `2^{m(n−m)} ≤ [n choose m]₂ ≤ 5·2^{m(n−m)}` at one `(n, m)`.
pub fn sandwich_holds(n: u64, m: u64) -> bool {
    let v = qbinomial(n, m);
    let lo = pow2(m * (n - m));
    v >= lo && v <= lo * 5u32
}

/// Results of the bound checks at one `n`; `None` where the hypothesis fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EigenvalueBounds {
    pub n: u64,
    /// `Σ_{i≤n−2} 2^{Q(i)} ≤ 3·2^{Q(n−3)}` (needs `n > 3`).
    pub summation: Option<bool>,
    /// `Q(n−2) = Q(n−3)` (needs `n ≥ 3`).
    pub peak_tie: Option<bool>,
    /// Sandwich for every `0 ≤ m ≤ n`.
    pub sandwich: bool,
    /// `Σ_i [n−i choose 2]₂ [n choose i]₂ 2^{C(i,2)}`, the bound on `λ²`.
    pub lambda_sq_sum: BigUint,
    /// `lambda_sq_sum ≤ 75·2^{Q(n−3)}` (needs `n ≥ 3`).
    pub lambda_bound: Option<bool>,
    /// `Δ² = Σ_i [n−i choose 2]₂ P_{0,i}`.
    pub delta_sq: BigUint,
    /// `Δ² ≥ 2^{3(n−3) + C(n−2,2)}` (needs `n > 8`).
    pub delta_bound: Option<bool>,
}

impl EigenvalueBounds {
    /// Whether every applicable check holds.
    pub fn all_hold(&self) -> bool {
        self.sandwich
            && [self.summation, self.peak_tie, self.lambda_bound, self.delta_bound].iter().all(|c| c.unwrap_or(true))
    }
}

pub fn appendix_c_bounds(n: u64) -> EigenvalueBounds {
    let summation = (n > 3).then(|| {
        let total: BigUint = (0..=n - 2).map(|i| pow2(q_exponent(n, i))).sum();
        total <= pow2(q_exponent(n, n - 3)) * 3u32
    });
    let peak_tie = (n >= 3).then(|| q_exponent(n, n - 2) == q_exponent(n, n - 3));
    let sandwich = (0..=n).all(|m| sandwich_holds(n, m));
    let lambda_sq_sum: BigUint =
        (0..=n).map(|i| qbinomial(n - i, 2) * qbinomial(n, i) * pow2_choose2(i)).sum();
    let lambda_bound = (n >= 3).then(|| lambda_sq_sum <= pow2(q_exponent(n, n - 3)) * 75u32);
    let delta_sq: BigUint = (0..=n).map(|i| qbinomial(n - i, 2) * valency(n as u32, i as u32)).sum();
    let delta_bound = (n > 8).then(|| delta_sq >= pow2(3 * (n - 3) + choose2(n - 2)));
    EigenvalueBounds { n, summation, peak_tie, sandwich, lambda_sq_sum, lambda_bound, delta_sq, delta_bound }
}

/// [`appendix_c_bounds`] over an inclusive range.
pub fn eigenvalue_bound_range(lo: u64, hi: u64) -> Vec<EigenvalueBounds> {
    (lo..=hi).map(appendix_c_bounds).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        assert!(sandwich_holds(4, 2));
        assert_eq!(qbinomial(4, 2), BigUint::from(35u32));
        let b = appendix_c_bounds(3);
        assert_eq!(b.delta_sq, BigUint::from(21u32));
        assert_eq!(b.summation, None);
        assert_eq!(b.delta_bound, None);
    }

    #[test]
    fn range_holds() {
        for b in eigenvalue_bound_range(9, 20) {
            assert!(b.all_hold(), "n = {}", b.n);
            assert_eq!(b.delta_bound, Some(true));
        }
        for n in 4..=20 {
            assert_eq!(appendix_c_bounds(n).summation, Some(true));
        }
    }
}
