//! Linear algebra over Z₂²ⁿ with the symplectic form.

mod enumerate;
pub(crate) mod rowreduce;
mod subspace;
pub(crate) mod symplectic;
mod vector;

pub use enumerate::{enumerate_all_levels, enumerate_isotropic, isotropic_subspaces_of, MAX_ENUM_QUBITS};
pub use subspace::{IsotropicSubspace, Subspace};
pub use symplectic::{extend_to_symplectic_basis, is_nondegenerate, QuotientMap, SymplecticBasis};
pub use vector::{GF2Vector, MAX_QUBITS};

pub(crate) use vector::low_mask;

/// `⟨a, b⟩`, erroring on mismatched qubit counts.
pub fn symplectic_product(a: &GF2Vector, b: &GF2Vector) -> crate::Result<bool> {
    a.symplectic(b)
}
