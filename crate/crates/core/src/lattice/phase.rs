use crate::error::{Error, Result};
use crate::gf2::GF2Vector;

/// Phase bit `w` in `f(x + y) = w + f(x) + f(y)` for commuting `x, y`.
///
/// With `a = x₁·x₂`, `b = y₁·y₂`, `c = (x₁+y₁)·(x₂+y₂)` and `d = x₂·y₁`, each
/// a Z₂ dot product used as a {0,1} exponent, the bit is 0 exactly when
/// `i^a i^b i^{−c} (−1)^d = 1`, i.e. when `a + b − c + 2d ≡ 0 (mod 4)`.
pub fn phase_w(x: &GF2Vector, y: &GF2Vector) -> Result<bool> {
    if x.symplectic(y)? {
        return Err(Error::Anticommuting { a: *x, b: *y });
    }
    Ok(phase_w_unchecked(x.bits(), y.bits(), x.n() as u32))
}

#[inline]
pub(crate) fn phase_w_unchecked(x: u64, y: u64, n: u32) -> bool {
    let m = crate::gf2::low_mask(n);
    let par = |v: u64| (v.count_ones() & 1) as i32;
    let a = par((x >> n) & x & m);
    let b = par((y >> n) & y & m);
    let s = x ^ y;
    let c = par((s >> n) & s & m);
    let d = par(x & m & (y >> n));
    let e = (a + b - c + 2 * d).rem_euclid(4);
    debug_assert!(e % 2 == 0, "commuting inputs give an even exponent");
    e == 2
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(s: &str) -> GF2Vector {
        s.parse().unwrap()
    }

    #[test]
    fn examples() {
        assert!(!phase_w(&v("10|00"), &v("01|00")).unwrap());
        assert!(phase_w(&v("10|01"), &v("01|10")).unwrap());
        assert!(!phase_w(&v("11|00"), &v("00|11")).unwrap());
        assert!(phase_w(&v("10|00"), &v("00|10")).is_err());
    }

    #[test]
    fn zero_and_self() {
        for bits in 0..16 {
            let x = GF2Vector::new(1 + (bits as usize % 2), bits % 4).unwrap();
            let z = GF2Vector::zero(x.n()).unwrap();
            assert!(!phase_w(&x, &z).unwrap());
        }
    }
}
