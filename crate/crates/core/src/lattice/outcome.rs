use alloc::vec::Vec;

use super::phase::phase_w_unchecked;
use crate::error::{Error, Result};
use crate::gf2::{GF2Vector, IsotropicSubspace};

/// A Pauli measurement: an isotropic subspace of coordinate vectors.
pub type Measurement = IsotropicSubspace;

/// `n − dim(x ∩ y)` for maximal measurements.
pub fn distance(x: &Measurement, y: &Measurement) -> Result<usize> {
    for m in [x, y] {
        if !m.is_maximal() {
            return Err(Error::NotMaximal { dim: m.dim(), n: m.n() });
        }
    }
    Ok(x.n() - x.intersect(y)?.dim())
}

/// An outcome of a measurement, stored as its values on the canonical basis.
///
/// Bit `i` of `values` is the value on canonical row `i`. Values elsewhere
/// follow from the linear/antilinear rule by folding [`super::phase_w`] along
/// the basis decomposition in row order.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Outcome {
    base: Measurement,
    values: u32,
}

impl Outcome {
    pub fn new(base: Measurement, values: u32) -> Result<Self> {
        if base.dim() < 32 && values >> base.dim() != 0 {
            return Err(Error::InvalidArgument(alloc::format!(
                "value mask {values:#b} has bits beyond dimension {}",
                base.dim()
            )));
        }
        Ok(Self { base, values })
    }

    pub fn trivial(n: usize) -> Result<Self> {
        Ok(Self { base: Measurement::zero(n)?, values: 0 })
    }

    pub fn base(&self) -> &Measurement {
        &self.base
    }

    pub fn values(&self) -> u32 {
        self.values
    }

    pub fn n(&self) -> usize {
        self.base.n()
    }

    /// Value at `v`; fails when `v` is outside the base.
    pub fn eval(&self, v: &GF2Vector) -> Result<bool> {
        let c = self.base.coordinates(v)?;
        Ok(eval_coefficients(self.base.rows(), self.values, c, v.n() as u32))
    }

    pub(crate) fn eval_bits(&self, bits: u64) -> Option<bool> {
        let c = self.base.coordinates_bits(bits)?;
        Some(eval_coefficients(self.base.rows(), self.values, c, self.n() as u32))
    }

    /// The restriction to a measurement `T` below the base.
    pub fn restrict(&self, t: &Measurement) -> Result<Outcome> {
        if !t.is_subspace_of(&self.base) {
            return Err(Error::NotBelow);
        }
        let mut values = 0u32;
        for (i, &r) in t.rows().iter().enumerate() {
            if self.eval_bits(r).expect("row lies in base") {
                values |= 1 << i;
            }
        }
        Ok(Outcome { base: t.clone(), values })
    }

    /// Agreement on the intersection of the bases. Linear/antilinear values
    /// on the intersection are determined by its basis, so checking the basis
    /// suffices.
    pub fn consistent(&self, other: &Outcome) -> Result<bool> {
        let common = self.base.intersect(&other.base)?;
        Ok(common.rows().iter().all(|&r| self.eval_bits(r) == other.eval_bits(r)))
    }

    /// Number of intersection vectors on which two inconsistent outcomes
    /// differ.
    pub fn disagreement_count(&self, other: &Outcome) -> Result<u64> {
        if self.consistent(other)? {
            return Err(Error::ConsistentOutcomes);
        }
        let common = self.base.intersect(&other.base)?;
        let mut count = 0;
        for v in common.vectors()? {
            if self.eval_bits(v.bits()) != other.eval_bits(v.bits()) {
                count += 1;
            }
        }
        Ok(count)
    }

    /// The full value table indexed by coefficient mask over the base.
    pub fn table(&self) -> Vec<bool> {
        let k = self.base.dim();
        let n = self.n() as u32;
        (0..1u32 << k).map(|c| eval_coefficients(self.base.rows(), self.values, c, n)).collect()
    }
}

/// Folds `acc ← acc + val(bᵢ) + w(sum so far, bᵢ)` over the selected rows.
#[inline]
pub(crate) fn eval_coefficients(rows: &[u64], values: u32, c: u32, n: u32) -> bool {
    let mut acc_v = 0u64;
    let mut acc = false;
    let mut rest = c;
    while rest != 0 {
        let i = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        let r = rows[i];
        acc ^= (values >> i & 1 == 1) ^ phase_w_unchecked(acc_v, r, n);
        acc_v ^= r;
    }
    acc
}

/// All `2^dim` outcomes of `s`, ordered by value mask.
pub fn outcomes(s: &Measurement) -> Result<Vec<Outcome>> {
    if s.dim() > 20 {
        return Err(Error::Capacity { what: "measurement dimension for outcome listing", value: s.dim() as u64, limit: 20 });
    }
    Ok((0..1u32 << s.dim()).map(|values| Outcome { base: s.clone(), values }).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2::enumerate_isotropic;

    fn v(s: &str) -> GF2Vector {
        s.parse().unwrap()
    }

    #[test]
    fn distance_on_l2() {
        let l = enumerate_isotropic(2, 2).unwrap();
        for x in &l {
            assert_eq!(distance(x, x).unwrap(), 0);
            let ones = l.iter().filter(|y| distance(x, y).unwrap() == 1).count();
            assert_eq!(ones, 6);
        }
        let w = Measurement::span(2, [v("10|00")]).unwrap();
        assert!(matches!(distance(&w, &l[0]), Err(Error::NotMaximal { .. })));
    }

    #[test]
    fn eval_basic() {
        let s = Measurement::span(2, [v("10|01"), v("01|10")]).unwrap();
        let o = Outcome::new(s.clone(), 0).unwrap();
        assert!(!o.eval(&GF2Vector::zero(2).unwrap()).unwrap());
        // X⊗Z · Z⊗X = −Y⊗Y, so the all-zero outcome gives value 1 on (11|11)
        assert!(o.eval(&v("11|11")).unwrap());
        assert!(o.eval(&v("10|00")).is_err());
        let xs = Measurement::span(2, [v("10|00"), v("01|00")]).unwrap();
        for values in 0..4 {
            let o = Outcome::new(xs.clone(), values).unwrap();
            assert_eq!(o.eval(&v("11|00")).unwrap(), (values.count_ones() & 1) == 1);
        }
    }

    #[test]
    fn restriction_and_consistency() {
        let s = Measurement::span(2, [v("11|00"), v("00|11")]).unwrap();
        let o = Outcome::new(s.clone(), 0b10).unwrap();
        assert_eq!(o.restrict(&s).unwrap(), o);
        let z = Measurement::zero(2).unwrap();
        assert_eq!(o.restrict(&z).unwrap(), Outcome::trivial(2).unwrap());
        assert!(o.consistent(&o).unwrap());
        let other = Outcome::new(s.clone(), 0b01).unwrap();
        assert!(!o.consistent(&other).unwrap());
        assert_eq!(o.disagreement_count(&other).unwrap(), 2);
        assert_eq!(o.disagreement_count(&o), Err(Error::ConsistentOutcomes));
        let t = Measurement::span(2, [v("10|00")]).unwrap();
        assert_eq!(o.restrict(&t), Err(Error::NotBelow));
    }

    #[test]
    fn outcome_listing() {
        assert_eq!(outcomes(&Measurement::zero(2).unwrap()).unwrap().len(), 1);
        let s = Measurement::span(2, [v("11|00"), v("00|11")]).unwrap();
        assert_eq!(outcomes(&s).unwrap().len(), 4);
        assert!(Outcome::new(s, 4).is_err());
    }
}
