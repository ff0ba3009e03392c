//! Error type shared by every module of the crate.

use alloc::string::String;

use crate::gf2::GF2Vector;

/// Failure modes of the measurement toolkit.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: {left} qubits vs {right} qubits")]
    DimensionMismatch { left: usize, right: usize },

    #[error("qubit count {0} is outside 1..=32")]
    InvalidQubitCount(usize),

    #[error("bit pattern {bits:#x} does not fit in {n} qubits")]
    BitsOutOfRange { bits: u64, n: usize },

    #[error("span is not isotropic: <{a}, {b}> = 1")]
    NotIsotropic { a: GF2Vector, b: GF2Vector },

    #[error("{what} = {value} exceeds the supported limit {limit}")]
    Capacity { what: &'static str, value: u64, limit: u64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("{0} is not a member of the subspace")]
    NotMember(GF2Vector),

    #[error("{a} and {b} anticommute")]
    Anticommuting { a: GF2Vector, b: GF2Vector },

    #[error("measurement of dimension {dim} is not maximal for {n} qubits")]
    NotMaximal { dim: usize, n: usize },

    #[error("target subspace is not contained in the outcome's base")]
    NotBelow,

    #[error("outcomes are consistent; the disagreement count is only defined for inconsistent pairs")]
    ConsistentOutcomes,

    #[error("qubit count {0} must be even")]
    OddQubitCount(usize),

    #[error("unsupported case: {0}")]
    Unsupported(String),

    #[error("no simple {d}-regular graph on {v} vertices")]
    InfeasibleRegular { v: usize, d: usize },

    #[error("graph is not regular")]
    Irregular,

    #[error("certificate inconsistency: theta {theta} < alpha {alpha}")]
    ThetaBelowAlpha { alpha: f64, theta: f64 },

    #[error("vertex index {index} out of range for {len} vertices")]
    VertexOutOfRange { index: usize, len: usize },

    #[error("empty input")]
    Empty,
}

pub type Result<T> = core::result::Result<T, Error>;
