//! Pauli measurement semilattice toolkit.
//!
//! The crate works over the symplectic space Z₂²ⁿ that carries the coordinate
//! vectors of n-qubit Pauli operators. Isotropic subspaces of that space are
//! commuting sets of Pauli observables, i.e. Pauli measurements. On top of the
//! linear algebra it provides outcome functions and consistency, exact
//! counting formulas, a dense matrix oracle, graph spectra, exact and bounded
//! hidden-variable solvers, and nonlocal game evaluation.
//!
//! Everything here is `no_std` with `alloc`. File formats, the command line
//! front end and report serialization live in the companion `pauli-lab` crate.

#![no_std]
#![forbid(unsafe_code)]
#![cfg_attr(test, allow(unused_imports))]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod error;
pub mod games;
pub mod gf2;
pub mod graphs;
pub mod lattice;
pub mod linalg;
pub mod matrix;
pub mod solvers;
pub mod stats;

pub use error::{Error, Result};
pub use gf2::{GF2Vector, IsotropicSubspace, Subspace, SymplecticBasis};
pub use lattice::{MaximalSystem, Measurement, Outcome};

/// Seed used by every sampler when the caller does not pick one.
pub const DEFAULT_SEED: u64 = 0xC0FFEE;
