//! Symplectic bases and the quotient `w⊥/w`.

use alloc::vec::Vec;

use super::rowreduce::{null_space, solve};
use super::subspace::{IsotropicSubspace, Subspace};
use super::vector::{check_same, GF2Vector};
use crate::error::{Error, Result};

/// Pairs `(xᵢ, zᵢ)` with `⟨xᵢ, zⱼ⟩ = δᵢⱼ` and `⟨xᵢ, xⱼ⟩ = ⟨zᵢ, zⱼ⟩ = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymplecticBasis {
    pub pairs: Vec<(GF2Vector, GF2Vector)>,
}

impl SymplecticBasis {
    /// Checks the defining relations; returns the first violated index pair.
    pub fn validate(&self) -> core::result::Result<(), (usize, usize)> {
        for (i, (xi, zi)) in self.pairs.iter().enumerate() {
            for (j, (xj, zj)) in self.pairs.iter().enumerate() {
                let ok = xi.symplectic_unchecked(zj) == (i == j)
                    && !xi.symplectic_unchecked(xj)
                    && !zi.symplectic_unchecked(zj);
                if !ok {
                    return Err((i, j));
                }
            }
        }
        Ok(())
    }

    /// Whether the pairs span all of Z₂²ⁿ.
    pub fn is_complete(&self) -> bool {
        self.pairs.first().is_some_and(|p| p.0.n() == self.pairs.len())
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}

fn swapped(v: u64, n: usize) -> u128 {
    u128::from(GF2Vector::swap_halves_bits(v, n as u32))
}

/// Vector `z` with prescribed symplectic products against `targets`.
pub(crate) fn symplectic_solve(n: usize, targets: &[(u64, bool)]) -> Option<u64> {
    let rows: Vec<(u128, bool)> = targets.iter().map(|&(u, b)| (swapped(u, n), b)).collect();
    solve(&rows, 2 * n as u32).map(|z| z as u64)
}

/// Appends pairs until `pairs` is a full symplectic basis of Z₂²ⁿ. The new
/// pairs span the symplectic complement of the existing ones.
fn complete(n: usize, pairs: &mut Vec<(u64, u64)>) {
    while pairs.len() < n {
        let used: Vec<u128> = pairs.iter().flat_map(|&(x, z)| [swapped(x, n), swapped(z, n)]).collect();
        let complement = null_space(&used, 2 * n as u32);
        let x = complement[0] as u64;
        let mut targets: Vec<(u64, bool)> = pairs.iter().flat_map(|&(a, b)| [(a, false), (b, false)]).collect();
        targets.push((x, true));
        let z = symplectic_solve(n, &targets).expect("complement of a symplectic set is nondegenerate");
        pairs.push((x, z));
    }
}

/// Symplectic Gram–Schmidt completion of an isotropic subspace: the first
/// `dim A` x-vectors are the canonical basis of `A`.
pub fn extend_to_symplectic_basis(a: &IsotropicSubspace) -> SymplecticBasis {
    let n = a.n();
    let rows = a.rows();
    let mut pairs: Vec<(u64, u64)> = Vec::with_capacity(n);
    for (i, &ai) in rows.iter().enumerate() {
        let mut targets: Vec<(u64, bool)> = rows.iter().enumerate().map(|(j, &aj)| (aj, i == j)).collect();
        targets.extend(pairs.iter().map(|&(_, z)| (z, false)));
        let z = symplectic_solve(n, &targets).expect("independent isotropic rows admit dual partners");
        pairs.push((ai, z));
    }
    complete(n, &mut pairs);
    SymplecticBasis {
        pairs: pairs.into_iter().map(|(x, z)| (GF2Vector::from_raw(n, x), GF2Vector::from_raw(n, z))).collect(),
    }
}

/// The isomorphism between measurements above a direction `w` and the
/// measurements of `n − 1` qubits, realized on `w⊥/w`.
///
/// A partner `f` with `⟨w, f⟩ = 1` is fixed together with a symplectic basis
/// `(xᵢ, zᵢ)` of the complement of `span{w, f}`. A vector `v ∈ w⊥` is first
/// moved into that complement as `v + ⟨v, f⟩w` and then read off in the basis.
#[derive(Clone, Debug)]
pub struct QuotientMap {
    n: usize,
    w: GF2Vector,
    partner: GF2Vector,
    basis: Vec<(GF2Vector, GF2Vector)>,
}

impl QuotientMap {
    pub fn new(w: &IsotropicSubspace) -> Result<Self> {
        if w.dim() != 1 {
            return Err(Error::InvalidArgument(alloc::format!("quotient needs a 1-dimensional w, got dim {}", w.dim())));
        }
        let n = w.n();
        if n < 2 {
            return Err(Error::InvalidArgument("quotient needs n ≥ 2".into()));
        }
        let sb = extend_to_symplectic_basis(w);
        let (wv, f) = sb.pairs[0];
        Ok(Self { n, w: wv, partner: f, basis: sb.pairs[1..].to_vec() })
    }

    pub fn direction(&self) -> GF2Vector {
        self.w
    }

    pub fn partner(&self) -> GF2Vector {
        self.partner
    }

    /// Image of `v ∈ w⊥` in Z₂^{2(n−1)}.
    pub fn project_vector(&self, v: &GF2Vector) -> Result<GF2Vector> {
        check_same(self.n, v.n())?;
        if v.symplectic_unchecked(&self.w) {
            return Err(Error::NotMember(*v));
        }
        let mut u = *v;
        if v.symplectic_unchecked(&self.partner) {
            u += self.w;
        }
        let m = self.n - 1;
        let (mut x, mut z) = (0u64, 0u64);
        for (i, (xi, zi)) in self.basis.iter().enumerate() {
            let bit = 1u64 << (m - 1 - i);
            if u.symplectic_unchecked(zi) {
                x |= bit;
            }
            if u.symplectic_unchecked(xi) {
                z |= bit;
            }
        }
        GF2Vector::from_parts(m, x, z)
    }

    /// Representative in `w⊥` (inside the complement) of an `(n−1)`-qubit vector.
    pub fn lift_vector(&self, u: &GF2Vector) -> Result<GF2Vector> {
        check_same(self.n - 1, u.n())?;
        let m = self.n - 1;
        let mut v = GF2Vector::from_raw(self.n, 0);
        for (i, (xi, zi)) in self.basis.iter().enumerate() {
            if u.get(i) {
                v += *xi;
            }
            if u.get(m + i) {
                v += *zi;
            }
        }
        Ok(v)
    }

    /// Image of a measurement `S ≥ w`.
    pub fn forward(&self, s: &IsotropicSubspace) -> Result<IsotropicSubspace> {
        check_same(self.n, s.n())?;
        if !s.contains(&self.w) {
            return Err(Error::InvalidArgument("measurement does not contain w".into()));
        }
        let mut images = Vec::with_capacity(s.dim());
        for b in s.basis() {
            images.push(self.project_vector(&b)?);
        }
        IsotropicSubspace::span(self.n - 1, images)
    }

    /// Preimage measurement `T' + span{w}` of an `(n−1)`-qubit measurement.
    pub fn inverse(&self, t: &IsotropicSubspace) -> Result<IsotropicSubspace> {
        check_same(self.n - 1, t.n())?;
        let mut vs = Vec::with_capacity(t.dim() + 1);
        vs.push(self.w);
        for b in t.basis() {
            vs.push(self.lift_vector(&b)?);
        }
        IsotropicSubspace::span(self.n, vs)
    }
}

/// Subspaces `W` with `dim W = 2(n−1)` of the form `span{a, b}⊥` for an
/// anticommuting pair; restricted to them the form is nondegenerate.
pub fn is_nondegenerate(s: &Subspace) -> bool {
    s.intersect(&s.perp()).map(|r| r.is_zero()).unwrap_or(false)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(s: &str) -> GF2Vector {
        s.parse().unwrap()
    }

    #[test]
    fn extension_of_zero_and_line() {
        let z = IsotropicSubspace::zero(1).unwrap();
        let b = extend_to_symplectic_basis(&z);
        assert_eq!(b.len(), 1);
        assert!(b.validate().is_ok());
        let a = IsotropicSubspace::span(2, [v("10|00")]).unwrap();
        let b = extend_to_symplectic_basis(&a);
        assert_eq!(b.pairs[0].0, v("10|00"));
        assert!(b.pairs[0].0.symplectic(&b.pairs[0].1).unwrap());
        assert!(b.validate().is_ok() && b.is_complete());
    }

    #[test]
    fn quotient_sends_w_to_zero() {
        let w = IsotropicSubspace::span(3, [v("110|011")]).unwrap();
        let q = QuotientMap::new(&w).unwrap();
        assert!(q.project_vector(&q.direction()).unwrap().is_zero());
        assert!(q.project_vector(&q.partner()).is_err());
        let u = v("10|01");
        assert_eq!(q.project_vector(&q.lift_vector(&u).unwrap()).unwrap(), u);
    }

    #[test]
    fn quotient_rejects_bad_w() {
        let x = IsotropicSubspace::span(2, [v("10|00"), v("01|00")]).unwrap();
        assert!(QuotientMap::new(&x).is_err());
        let w1 = IsotropicSubspace::span(1, [v("1|0")]).unwrap();
        assert!(QuotientMap::new(&w1).is_err());
    }
}
