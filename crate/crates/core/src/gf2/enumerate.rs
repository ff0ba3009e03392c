use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use super::subspace::{IsotropicSubspace, Subspace};
use super::vector::check_qubits;
use crate::error::{Error, Result};

/// Largest qubit count for object-level enumeration.
pub const MAX_ENUM_QUBITS: usize = 4;

fn check_enum(n: usize, k: usize) -> Result<()> {
    check_qubits(n)?;
    if n > MAX_ENUM_QUBITS {
        return Err(Error::Capacity { what: "qubits for enumeration", value: n as u64, limit: MAX_ENUM_QUBITS as u64 });
    }
    if k > n {
        return Err(Error::InvalidArgument(alloc::format!("isotropic dimension {k} exceeds n = {n}")));
    }
    Ok(())
}

/// The next level: every isotropic `S + span{v}` with `v ∈ S⊥ \ S`.
fn extend_level(level: &BTreeSet<IsotropicSubspace>) -> BTreeSet<IsotropicSubspace> {
    let mut next = BTreeSet::new();
    for s in level {
        let p = s.perp();
        let n = s.n();
        for v in p.vectors().expect("perp dimension is at most 2n ≤ 8") {
            if s.contains(&v) {
                continue;
            }
            let mut rows = s.rows().to_vec();
            rows.push(v.bits());
            next.insert(IsotropicSubspace::from_isotropic_unchecked(Subspace::from_rows(n, rows)));
        }
    }
    next
}

/// All `k`-dimensional isotropic subspaces of Z₂²ⁿ, sorted by canonical basis.
pub fn enumerate_isotropic(n: usize, k: usize) -> Result<Vec<IsotropicSubspace>> {
    check_enum(n, k)?;
    let mut level = BTreeSet::new();
    level.insert(IsotropicSubspace::zero(n)?);
    for _ in 0..k {
        level = extend_level(&level);
    }
    Ok(level.into_iter().collect())
}

/// Every level `ℒⁿ_0, …, ℒⁿ_n` at once, sharing the intermediate work.
pub fn enumerate_all_levels(n: usize) -> Result<Vec<Vec<IsotropicSubspace>>> {
    check_enum(n, n)?;
    let mut out = Vec::with_capacity(n + 1);
    let mut level = BTreeSet::new();
    level.insert(IsotropicSubspace::zero(n)?);
    for k in 0..=n {
        if k > 0 {
            level = extend_level(&level);
        }
        out.push(level.iter().cloned().collect());
    }
    Ok(out)
}

/// All `k`-dimensional subspaces of `within` that are isotropic.
pub fn isotropic_subspaces_of(within: &Subspace, k: usize) -> Result<Vec<IsotropicSubspace>> {
    if within.dim() > 2 * MAX_ENUM_QUBITS {
        return Err(Error::Capacity { what: "ambient dimension", value: within.dim() as u64, limit: 8 });
    }
    let n = within.n();
    let mut level = BTreeSet::new();
    level.insert(IsotropicSubspace::zero(n)?);
    for _ in 0..k {
        let mut next = BTreeSet::new();
        for s in &level {
            for v in within.vectors()? {
                if s.contains(&v) || !s.orthogonal_to_all(v.bits()) {
                    continue;
                }
                let mut rows = s.rows().to_vec();
                rows.push(v.bits());
                next.insert(IsotropicSubspace::from_isotropic_unchecked(Subspace::from_rows(n, rows)));
            }
        }
        level = next;
    }
    Ok(level.into_iter().collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_levels() {
        assert_eq!(enumerate_isotropic(2, 2).unwrap().len(), 15);
        assert_eq!(enumerate_isotropic(3, 0).unwrap().len(), 1);
        assert_eq!(enumerate_isotropic(1, 1).unwrap().len(), 3);
        assert_eq!(enumerate_isotropic(2, 1).unwrap().len(), 15);
    }

    #[test]
    fn output_is_sorted_and_isotropic() {
        let l = enumerate_isotropic(2, 2).unwrap();
        assert!(l.windows(2).all(|w| w[0] < w[1]));
        assert!(l.iter().all(|s| s.is_isotropic() && s.dim() == 2));
    }

    #[test]
    fn capacity_and_range() {
        assert!(matches!(enumerate_isotropic(5, 1), Err(Error::Capacity { .. })));
        assert!(matches!(enumerate_isotropic(2, 3), Err(Error::InvalidArgument(_))));
    }
}
