//! Exact counting formulas for the measurement lattice.

use num_bigint::BigUint;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

fn pow2(e: u64) -> BigUint {
    BigUint::one() << e
}

fn choose2(m: u64) -> u64 {
    m * m.saturating_sub(1) / 2
}

/// Gaussian binomial `[n choose m]₂` with its arguments.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QBinomial {
    pub n: u64,
    pub m: u64,
    pub value: BigUint,
}

impl QBinomial {
    pub fn new(n: u64, m: u64) -> Self {
        Self { n, m, value: qbinomial(n, m) }
    }
}

/// `∏_{i<m} (2^{n−i} − 1)/(2^{i+1} − 1)`; zero when `m > n`.
pub fn qbinomial(n: u64, m: u64) -> BigUint {
    if m > n {
        return BigUint::zero();
    }
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 0..m {
        num *= pow2(n - i) - 1u32;
        den *= pow2(i + 1) - 1u32;
    }
    let (q, r) = num.div_rem(&den);
    debug_assert!(r.is_zero());
    q
}

/// `|ℒⁿ_k| = ∏_{i<k} (2^{2n−i} − 2^i)/(2^k − 2^i)`.
pub fn count_level(n: u64, k: u64) -> Result<BigUint> {
    if k > n {
        return Err(Error::InvalidArgument(alloc::format!("level {k} exceeds n = {n}")));
    }
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 0..k {
        num *= pow2(2 * n - i) - pow2(i);
        den *= pow2(k) - pow2(i);
    }
    let (q, r) = num.div_rem(&den);
    debug_assert!(r.is_zero());
    Ok(q)
}

fn check_even(n: u64) -> Result<()> {
    if n == 0 || n % 2 == 1 {
        Err(Error::OddQubitCount(n as usize))
    } else {
        Ok(())
    }
}

/// `Ω_{n/2} = [n choose n/2]₂ · 2^{C(n/2+1, 2)}`: partners of a maximal
/// measurement at distance `n/2`.
pub fn omega_half(n: u64) -> Result<BigUint> {
    check_even(n)?;
    let h = n / 2;
    Ok(qbinomial(n, h) * pow2(choose2(h + 1)))
}

/// Ordered question pairs of `Z_{n/2}`: `Ω_{n/2} · |ℒⁿ_n|`.
pub fn question_count_q(n: u64) -> Result<BigUint> {
    Ok(omega_half(n)? * count_level(n, n)?)
}

/// Degree of `G_w`, and the expression printed with a leading factor 2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeGw {
    /// `[n−1 choose n/2−1]₂ · 2^{C(n/2+1, 2)}`, the count that matches the
    /// constructed graphs.
    pub value: BigUint,
    /// The same expression with the extra factor 2.
    pub doubled_expression: BigUint,
}

pub fn degree_gw(n: u64) -> Result<DegreeGw> {
    check_even(n)?;
    let h = n / 2;
    let value = qbinomial(n - 1, h - 1) * pow2(choose2(h + 1));
    let doubled_expression = &value * 2u32;
    Ok(DegreeGw { value, doubled_expression })
}

/// `|V(G_w)| = |ℒⁿ_n| (2ⁿ − 1) / |ℒⁿ_1|`.
pub fn v_count_gw(n: u64) -> Result<BigUint> {
    if n < 2 {
        return Err(Error::InvalidArgument("G_w needs n ≥ 2".into()));
    }
    let num = count_level(n, n)? * (pow2(n) - 1u32);
    let (q, r) = num.div_rem(&count_level(n, 1)?);
    debug_assert!(r.is_zero());
    Ok(q)
}

/// The item-four identity for `Q / (|ℒⁿ_n| · deg G_w)` under both degree
/// readings, as exact rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ItemFourCheck {
    pub ratio_with_degree: BigRational,
    pub ratio_with_doubled: BigRational,
    /// `(2^{n/2+1} − 1)/(2^{n/2} − 1) · ∏_{i=0}^{n/2−2} (2^{n−i} − 1)/(2^{n−i−1} − 1)`.
    pub product_form: BigRational,
    /// `2^{n/2}`.
    pub lower_bound: BigRational,
}

impl ItemFourCheck {
    pub fn holds_for_degree(&self) -> bool {
        self.ratio_with_degree == self.product_form && self.product_form >= self.lower_bound
    }

    pub fn holds_for_doubled(&self) -> bool {
        self.ratio_with_doubled == self.product_form
    }
}

pub fn item_four_check(n: u64) -> Result<ItemFourCheck> {
    let q = question_count_q(n)?;
    let l = count_level(n, n)?;
    let deg = degree_gw(n)?;
    let h = n / 2;
    let rat = |a: BigUint, b: BigUint| BigRational::new(a.into(), b.into());
    let mut product = rat(pow2(h + 1) - 1u32, pow2(h) - 1u32);
    for i in 0..h.saturating_sub(1) {
        product *= rat(pow2(n - i) - 1u32, pow2(n - i - 1) - 1u32);
    }
    Ok(ItemFourCheck {
        ratio_with_degree: rat(q.clone(), &l * deg.value),
        ratio_with_doubled: rat(q, l * deg.doubled_expression),
        product_form: product,
        lower_bound: BigRational::from_integer(pow2(h).into()),
    })
}

/// `2^{C(k,2)}`-weighted row sums used by the spectral formulas.
pub fn pow2_choose2(k: u64) -> BigUint {
    pow2(choose2(k))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    #[test]
    fn qbinomial_values() {
        assert_eq!(qbinomial(4, 2), big(35));
        assert_eq!(qbinomial(3, 1), big(7));
        assert_eq!(qbinomial(5, 0), big(1));
        assert_eq!(qbinomial(2, 3), big(0));
        assert_eq!(qbinomial(6, 3), big(1395));
    }

    #[test]
    fn level_counts() {
        assert_eq!(count_level(2, 2).unwrap(), big(15));
        assert_eq!(count_level(7, 0).unwrap(), big(1));
        assert_eq!(count_level(3, 3).unwrap(), big(135));
        assert_eq!(count_level(4, 4).unwrap(), big(2295));
        assert_eq!(count_level(4, 2).unwrap(), big(5355));
        assert_eq!(count_level(4, 1).unwrap(), big(255));
        assert!(count_level(2, 3).is_err());
    }

    #[test]
    fn question_counts() {
        assert_eq!(omega_half(2).unwrap(), big(6));
        assert_eq!(question_count_q(2).unwrap(), big(90));
        assert_eq!(omega_half(4).unwrap(), big(280));
        assert_eq!(question_count_q(4).unwrap(), big(280 * 2295));
        assert_eq!(omega_half(3), Err(Error::OddQubitCount(3)));
    }

    #[test]
    fn degrees() {
        let d2 = degree_gw(2).unwrap();
        assert_eq!((d2.value, d2.doubled_expression), (big(2), big(4)));
        let d4 = degree_gw(4).unwrap();
        assert_eq!((d4.value, d4.doubled_expression), (big(56), big(112)));
        assert_eq!(v_count_gw(2).unwrap(), big(3));
        assert_eq!(v_count_gw(3).unwrap(), big(15));
        assert_eq!(v_count_gw(4).unwrap(), big(135));
    }

    #[test]
    fn item_four() {
        for n in [2, 4, 6, 8] {
            let c = item_four_check(n).unwrap();
            assert!(c.holds_for_degree(), "n = {n}");
            assert!(!c.holds_for_doubled(), "n = {n}");
        }
    }
}
