use core::fmt;
use core::ops::{Add, AddAssign};
use core::str::FromStr;

use crate::error::{Error, Result};

/// Largest qubit count representable by a [`GF2Vector`].
pub const MAX_QUBITS: usize = 32;

/// Mask with the low `width` bits set (`width` ≤ 64).
#[inline]
pub(crate) const fn low_mask(width: u32) -> u64 {
    if width >= 64 {
        u64::MAX
    } else {
        (1u64 << width) - 1
    }
}

/// Coordinate vector `(x₁ | x₂)` of an n-qubit Pauli operator.
///
/// The 2n-bit string is packed big-endian into a `u64`: string position `p`
/// (0-based, X part first) lives at bit `2n − 1 − p`. With this packing the
/// integer order of `bits` is the lexicographic order of the strings, and the
/// X part is `bits >> n`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GF2Vector {
    bits: u64,
    n: u8,
}

impl GF2Vector {
    pub fn new(n: usize, bits: u64) -> Result<Self> {
        check_qubits(n)?;
        if bits & !low_mask(2 * n as u32) != 0 {
            return Err(Error::BitsOutOfRange { bits, n });
        }
        Ok(Self { bits, n: n as u8 })
    }

    pub fn zero(n: usize) -> Result<Self> {
        Self::new(n, 0)
    }

    /// Builds `(x | z)` from the two halves, each given as an n-bit integer
    /// whose most significant bit is qubit 1.
    pub fn from_parts(n: usize, x: u64, z: u64) -> Result<Self> {
        check_qubits(n)?;
        let m = low_mask(n as u32);
        if x & !m != 0 || z & !m != 0 {
            return Err(Error::BitsOutOfRange { bits: x | z, n });
        }
        Ok(Self { bits: (x << n) | z, n: n as u8 })
    }

    /// Single-qubit X on qubit `q` (0-based).
    pub fn x_on(n: usize, q: usize) -> Result<Self> {
        if q >= n {
            return Err(Error::InvalidArgument(alloc::format!("qubit {q} out of range for n = {n}")));
        }
        Self::from_parts(n, 1 << (n - 1 - q), 0)
    }

    /// Single-qubit Z on qubit `q` (0-based).
    pub fn z_on(n: usize, q: usize) -> Result<Self> {
        if q >= n {
            return Err(Error::InvalidArgument(alloc::format!("qubit {q} out of range for n = {n}")));
        }
        Self::from_parts(n, 0, 1 << (n - 1 - q))
    }

    #[inline]
    pub(crate) const fn from_raw(n: usize, bits: u64) -> Self {
        Self { bits, n: n as u8 }
    }

    #[inline]
    pub const fn n(&self) -> usize {
        self.n as usize
    }

    #[inline]
    pub const fn bits(&self) -> u64 {
        self.bits
    }

    #[inline]
    pub const fn x_part(&self) -> u64 {
        self.bits >> self.n
    }

    #[inline]
    pub const fn z_part(&self) -> u64 {
        self.bits & low_mask(self.n as u32)
    }

    #[inline]
    pub const fn is_zero(&self) -> bool {
        self.bits == 0
    }

    /// Bit at string position `p` (0-based, X part first).
    pub fn get(&self, p: usize) -> bool {
        debug_assert!(p < 2 * self.n());
        (self.bits >> (2 * self.n() - 1 - p)) & 1 == 1
    }

    /// Number of qubits on which the Pauli word acts non-trivially.
    pub fn support_weight(&self) -> u32 {
        (self.x_part() | self.z_part()).count_ones()
    }

    /// The symplectic form `x₁·y₂ + x₂·y₁` over Z₂.
    pub fn symplectic(&self, other: &Self) -> Result<bool> {
        check_same(self.n(), other.n())?;
        Ok(self.symplectic_unchecked(other))
    }

    #[inline]
    pub(crate) fn symplectic_unchecked(&self, other: &Self) -> bool {
        symplectic_bits(self.bits, other.bits, self.n as u32)
    }

    /// `x₁·x₂ mod 2`, the exponent of the conventional phase `i^{x₁·x₂}`.
    #[inline]
    pub fn xz_overlap(&self) -> bool {
        (self.x_part() & self.z_part()).count_ones() & 1 == 1
    }

    /// Swaps the X and Z halves, so that an ordinary dot product with the
    /// result equals the symplectic product with `self`.
    #[inline]
    pub(crate) fn swap_halves_bits(bits: u64, n: u32) -> u64 {
        (bits >> n) | ((bits & low_mask(n)) << n)
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        check_same(self.n(), other.n())?;
        Ok(Self { bits: self.bits ^ other.bits, n: self.n })
    }

    /// Every vector of Z₂²ⁿ in increasing order.
    pub fn all(n: usize) -> Result<impl Iterator<Item = GF2Vector>> {
        check_qubits(n)?;
        if n > 16 {
            return Err(Error::Capacity { what: "qubits for exhaustive iteration", value: n as u64, limit: 16 });
        }
        Ok((0..(1u64 << (2 * n))).map(move |b| GF2Vector::from_raw(n, b)))
    }
}

#[inline]
pub(crate) fn symplectic_bits(a: u64, b: u64, n: u32) -> bool {
    let m = low_mask(n);
    let (ax, az) = (a >> n, a & m);
    let (bx, bz) = (b >> n, b & m);
    ((ax & bz) ^ (az & bx)).count_ones() & 1 == 1
}

pub(crate) fn check_qubits(n: usize) -> Result<()> {
    if n == 0 || n > MAX_QUBITS {
        Err(Error::InvalidQubitCount(n))
    } else {
        Ok(())
    }
}

#[inline]
pub(crate) fn check_same(a: usize, b: usize) -> Result<()> {
    if a != b {
        Err(Error::DimensionMismatch { left: a, right: b })
    } else {
        Ok(())
    }
}

/// Addition panics on mismatched qubit counts; use
/// [`GF2Vector::checked_add`] for fallible addition.
impl Add for GF2Vector {
    type Output = GF2Vector;
    fn add(self, rhs: Self) -> Self {
        assert_eq!(self.n, rhs.n, "adding vectors of different qubit counts");
        Self { bits: self.bits ^ rhs.bits, n: self.n }
    }
}

impl AddAssign for GF2Vector {
    fn add_assign(&mut self, rhs: Self) {
        *self = *self + rhs;
    }
}

impl fmt::Display for GF2Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.n();
        f.write_str("(")?;
        for p in 0..2 * n {
            if p == n {
                f.write_str("|")?;
            }
            f.write_str(if self.get(p) { "1" } else { "0" })?;
        }
        f.write_str(")")
    }
}

impl fmt::Debug for GF2Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Parses `"10|01"`, `"(10|01)"` or the unseparated `"1001"`.
impl FromStr for GF2Vector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().trim_start_matches('(').trim_end_matches(')');
        let mut bits = 0u64;
        let mut len = 0usize;
        let mut bar = None;
        for ch in t.chars() {
            match ch {
                '0' | '1' => {
                    if len >= 64 {
                        return Err(Error::InvalidArgument(alloc::format!("vector string too long: {s}")));
                    }
                    bits = (bits << 1) | u64::from(ch == '1');
                    len += 1;
                }
                '|' if bar.is_none() => bar = Some(len),
                ' ' | '_' => {}
                _ => return Err(Error::InvalidArgument(alloc::format!("bad character {ch:?} in vector {s}"))),
            }
        }
        if len == 0 || len % 2 == 1 || bar.is_some_and(|b| 2 * b != len) {
            return Err(Error::InvalidArgument(alloc::format!("malformed vector {s}")));
        }
        GF2Vector::new(len / 2, bits)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn v(s: &str) -> GF2Vector {
        s.parse().unwrap()
    }

    #[test]
    fn packing_and_parts() {
        let a = v("10|01");
        assert_eq!(a.n(), 2);
        assert_eq!(a.x_part(), 0b10);
        assert_eq!(a.z_part(), 0b01);
        assert!(a.get(0) && !a.get(1) && !a.get(2) && a.get(3));
        assert_eq!(a, GF2Vector::from_parts(2, 0b10, 0b01).unwrap());
        assert_eq!(a.to_string(), "(10|01)");
        assert_eq!(GF2Vector::x_on(2, 0).unwrap(), v("10|00"));
        assert_eq!(GF2Vector::z_on(2, 1).unwrap(), v("00|01"));
    }

    #[test]
    fn symplectic_examples() {
        assert!(v("10|00").symplectic(&v("00|10")).unwrap());
        assert!(!v("11|01").symplectic(&v("01|10")).unwrap());
        assert!(!v("11|00").symplectic(&v("00|11")).unwrap());
        assert!(matches!(
            v("1|0").symplectic(&v("10|00")),
            Err(Error::DimensionMismatch { left: 1, right: 2 })
        ));
    }

    #[test]
    fn order_is_lexicographic() {
        assert!(v("01|11") < v("10|00"));
        assert!(v("00|01") < v("00|10"));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(GF2Vector::new(0, 0).is_err());
        assert!(GF2Vector::new(33, 0).is_err());
        assert!(GF2Vector::new(1, 0b100).is_err());
        assert!("1|01".parse::<GF2Vector>().is_err());
        assert!("10x1".parse::<GF2Vector>().is_err());
        assert_eq!(GF2Vector::new(32, u64::MAX).unwrap().x_part(), u32::MAX as u64);
    }
}
