use alloc::vec::Vec;
use core::fmt;

use super::rowreduce::{dot, leading_bit, null_space, rref};
use super::vector::{check_qubits, check_same, low_mask, GF2Vector};
use crate::error::{Error, Result};

/// A linear subspace of Z₂²ⁿ held in reduced row-echelon form.
///
/// Rows are sorted by strictly increasing pivot column in string order (the
/// X part comes first), which on the packed integers means strictly
/// decreasing leading bit. Every pivot column is zero in all other rows, so
/// the representation is unique and equality is row-wise equality.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace {
    n: u8,
    rows: Vec<u64>,
}

impl Subspace {
    pub fn zero(n: usize) -> Result<Self> {
        check_qubits(n)?;
        Ok(Self { n: n as u8, rows: Vec::new() })
    }

    /// The whole space Z₂²ⁿ.
    pub fn full(n: usize) -> Result<Self> {
        check_qubits(n)?;
        let rows = (0..2 * n as u32).rev().map(|b| 1u64 << b).collect();
        Ok(Self { n: n as u8, rows })
    }

    /// Canonical basis of the span of `vectors`.
    pub fn span<I: IntoIterator<Item = GF2Vector>>(n: usize, vectors: I) -> Result<Self> {
        check_qubits(n)?;
        let mut rows = Vec::new();
        for v in vectors {
            check_same(n, v.n())?;
            rows.push(v.bits());
        }
        Ok(Self::from_rows(n, rows))
    }

    pub(crate) fn from_rows(n: usize, rows: Vec<u64>) -> Self {
        let mut wide: Vec<u128> = rows.into_iter().map(u128::from).collect();
        rref(&mut wide, 2 * n as u32);
        Self { n: n as u8, rows: wide.into_iter().map(|r| r as u64).collect() }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n as usize
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    /// Packed canonical rows, in basis order.
    #[inline]
    pub fn rows(&self) -> &[u64] {
        &self.rows
    }

    pub fn basis(&self) -> impl ExactSizeIterator<Item = GF2Vector> + '_ {
        let n = self.n();
        self.rows.iter().map(move |&r| GF2Vector::from_raw(n, r))
    }

    /// Pivot string positions of the canonical rows (strictly increasing).
    pub fn pivot_columns(&self) -> Vec<usize> {
        let w = 2 * self.n();
        self.rows.iter().map(|&r| w - 1 - leading_bit(u128::from(r)) as usize).collect()
    }

    /// Coefficients of `bits` over the canonical basis: bit `i` of the result
    /// is the coefficient of row `i`. `None` when `bits` is outside the span.
    #[inline]
    pub(crate) fn coordinates_bits(&self, mut bits: u64) -> Option<u32> {
        let mut c = 0u32;
        for (i, &r) in self.rows.iter().enumerate() {
            let lead = 63 - r.leading_zeros();
            if bits >> lead & 1 == 1 {
                bits ^= r;
                c |= 1 << i;
            }
        }
        (bits == 0).then_some(c)
    }

    pub fn coordinates(&self, v: &GF2Vector) -> Result<u32> {
        check_same(self.n(), v.n())?;
        self.coordinates_bits(v.bits()).ok_or(Error::NotMember(*v))
    }

    pub fn contains(&self, v: &GF2Vector) -> bool {
        v.n() == self.n() && self.coordinates_bits(v.bits()).is_some()
    }

    /// The vector with coefficient mask `c` over the canonical rows.
    #[inline]
    pub(crate) fn combine(&self, c: u32) -> u64 {
        let mut acc = 0;
        for (i, &r) in self.rows.iter().enumerate() {
            if c >> i & 1 == 1 {
                acc ^= r;
            }
        }
        acc
    }

    pub fn is_subspace_of(&self, other: &Self) -> bool {
        self.n == other.n && self.rows.iter().all(|&r| other.coordinates_bits(r).is_some())
    }

    pub fn sum(&self, other: &Self) -> Result<Self> {
        check_same(self.n(), other.n())?;
        let rows = self.rows.iter().chain(&other.rows).copied().collect();
        Ok(Self::from_rows(self.n(), rows))
    }

    /// `A ∩ B` by the Zassenhaus algorithm: reduce the block matrix
    /// `[[A, A], [B, 0]]`; rows whose left block vanishes carry a basis of the
    /// intersection in their right block.
    pub fn intersect(&self, other: &Self) -> Result<Self> {
        check_same(self.n(), other.n())?;
        let w = 2 * self.n() as u32;
        let mut m: Vec<u128> = Vec::with_capacity(self.dim() + other.dim());
        m.extend(self.rows.iter().map(|&a| (u128::from(a) << w) | u128::from(a)));
        m.extend(other.rows.iter().map(|&b| u128::from(b) << w));
        rref(&mut m, 2 * w);
        let right = low_mask(w) as u128;
        let rows = m.into_iter().filter(|&r| r >> w == 0).map(|r| (r & right) as u64).collect();
        Ok(Self::from_rows(self.n(), rows))
    }

    /// Symplectic complement `{v : ⟨v, a⟩ = 0 for all a}`.
    pub fn perp(&self) -> Self {
        let n = self.n() as u32;
        let swapped: Vec<u128> =
            self.rows.iter().map(|&r| u128::from(GF2Vector::swap_halves_bits(r, n))).collect();
        let k = null_space(&swapped, 2 * n);
        Self::from_rows(self.n(), k.into_iter().map(|r| r as u64).collect())
    }

    /// First pair of canonical rows with symplectic product 1, if any.
    pub fn isotropy_witness(&self) -> Option<(GF2Vector, GF2Vector)> {
        let n = self.n();
        for (i, &a) in self.rows.iter().enumerate() {
            for &b in &self.rows[i + 1..] {
                if super::vector::symplectic_bits(a, b, n as u32) {
                    return Some((GF2Vector::from_raw(n, a), GF2Vector::from_raw(n, b)));
                }
            }
        }
        None
    }

    pub fn is_isotropic(&self) -> bool {
        self.isotropy_witness().is_none()
    }

    /// All `2^dim` vectors of the subspace, indexed by coefficient mask.
    pub fn vectors(&self) -> Result<impl Iterator<Item = GF2Vector> + '_> {
        if self.dim() > 24 {
            return Err(Error::Capacity { what: "subspace dimension for enumeration", value: self.dim() as u64, limit: 24 });
        }
        let n = self.n();
        Ok((0..1u32 << self.dim()).map(move |c| GF2Vector::from_raw(n, self.combine(c))))
    }

    /// Plain dot-product membership test of `v` against the perp, kept for
    /// oracles that must not call [`Subspace::perp`].
    pub(crate) fn orthogonal_to_all(&self, v: u64) -> bool {
        let n = self.n() as u32;
        let sv = u128::from(GF2Vector::swap_halves_bits(v, n));
        self.rows.iter().all(|&r| !dot(u128::from(r), sv))
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.basis()).finish()
    }
}

/// A subspace on which the symplectic form vanishes: a Pauli measurement.
///
/// Wraps a [`Subspace`] whose isotropy was checked at construction. Read-only
/// subspace operations are available through `Deref`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IsotropicSubspace(Subspace);

impl IsotropicSubspace {
    /// Canonical form of the span of a nonempty, common-`n` list; fails with
    /// a witness pair when the span is not isotropic.
    pub fn canonicalize(vectors: &[GF2Vector]) -> Result<Self> {
        let first = vectors.first().ok_or(Error::Empty)?;
        Self::span(first.n(), vectors.iter().copied())
    }

    pub fn span<I: IntoIterator<Item = GF2Vector>>(n: usize, vectors: I) -> Result<Self> {
        Self::try_from(Subspace::span(n, vectors)?)
    }

    pub fn zero(n: usize) -> Result<Self> {
        Ok(Self(Subspace::zero(n)?))
    }

    pub(crate) fn from_isotropic_unchecked(s: Subspace) -> Self {
        debug_assert!(s.is_isotropic());
        Self(s)
    }

    pub fn as_subspace(&self) -> &Subspace {
        &self.0
    }

    pub fn into_subspace(self) -> Subspace {
        self.0
    }

    pub fn is_maximal(&self) -> bool {
        self.dim() == self.n()
    }

    /// Intersection; a subspace of an isotropic space is isotropic.
    pub fn intersect(&self, other: &Self) -> Result<Self> {
        Ok(Self(self.0.intersect(&other.0)?))
    }

    /// `self + span{v}` if the result is still isotropic.
    pub fn extend(&self, v: &GF2Vector) -> Result<Self> {
        check_same(self.n(), v.n())?;
        if let Some(b) = self.basis().find(|b| b.symplectic_unchecked(v)) {
            return Err(Error::NotIsotropic { a: b, b: *v });
        }
        let mut rows = self.0.rows.clone();
        rows.push(v.bits());
        Ok(Self(Subspace::from_rows(self.n(), rows)))
    }
}

impl TryFrom<Subspace> for IsotropicSubspace {
    type Error = Error;
    fn try_from(s: Subspace) -> Result<Self> {
        match s.isotropy_witness() {
            Some((a, b)) => Err(Error::NotIsotropic { a, b }),
            None => Ok(Self(s)),
        }
    }
}

impl core::ops::Deref for IsotropicSubspace {
    type Target = Subspace;
    fn deref(&self) -> &Subspace {
        &self.0
    }
}

impl fmt::Debug for IsotropicSubspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(&self.0, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn v(s: &str) -> GF2Vector {
        s.parse().unwrap()
    }

    #[test]
    fn canonicalize_examples() {
        let a = IsotropicSubspace::canonicalize(&[v("1|0")]).unwrap();
        assert_eq!(a.dim(), 1);
        assert_eq!(a.basis().collect::<Vec<_>>(), vec![v("1|0")]);
        let b = IsotropicSubspace::canonicalize(&[v("10|00"), v("10|00")]).unwrap();
        assert_eq!(b.dim(), 1);
        let err = IsotropicSubspace::canonicalize(&[v("1|0"), v("0|1")]).unwrap_err();
        assert_eq!(err, Error::NotIsotropic { a: v("1|0"), b: v("0|1") });
        assert_eq!(IsotropicSubspace::canonicalize(&[]).unwrap_err(), Error::Empty);
    }

    #[test]
    fn canonical_form_is_rref() {
        let s = Subspace::span(2, [v("11|00"), v("01|01"), v("10|01")]).unwrap();
        assert_eq!(s.dim(), 2);
        assert_eq!(s.pivot_columns(), vec![0, 1]);
        assert_eq!(s.basis().collect::<Vec<_>>(), vec![v("10|01"), v("01|01")]);
    }

    #[test]
    fn intersection_examples() {
        let a = IsotropicSubspace::span(2, [v("10|00"), v("01|00")]).unwrap();
        let b = IsotropicSubspace::span(2, [v("10|00"), v("00|01")]).unwrap();
        let c = a.intersect(&b).unwrap();
        assert_eq!(c.basis().collect::<Vec<_>>(), vec![v("10|00")]);
        assert_eq!(a.intersect(&a).unwrap(), a);
        let z = IsotropicSubspace::zero(2).unwrap();
        assert_eq!(a.intersect(&z).unwrap(), z);
    }

    #[test]
    fn perp_examples() {
        let w = IsotropicSubspace::canonicalize(&[v("1|0")]).unwrap();
        assert_eq!(w.perp(), *w.as_subspace());
        assert_eq!(Subspace::zero(3).unwrap().perp(), Subspace::full(3).unwrap());
        let x = IsotropicSubspace::span(2, [v("11|00"), v("00|11")]).unwrap();
        assert_eq!(x.perp(), *x.as_subspace());
    }

    #[test]
    fn coordinates_match_combination() {
        let s = Subspace::span(3, [v("110|001"), v("011|100"), v("000|011")]).unwrap();
        for c in 0..8 {
            let bits = s.combine(c);
            assert_eq!(s.coordinates_bits(bits), Some(c));
        }
        assert!(!s.contains(&v("100|000")));
    }

    #[test]
    fn extend_checks_isotropy() {
        let a = IsotropicSubspace::span(2, [v("10|00")]).unwrap();
        assert!(a.extend(&v("00|10")).is_err());
        assert_eq!(a.extend(&v("01|00")).unwrap().dim(), 2);
    }
}
