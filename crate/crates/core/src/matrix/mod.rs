//! Dense complex matrices for the Pauli group: the ground-truth oracle for
//! phases, outcomes and the entangled strategy.

mod dense;
mod pauli;
mod strategy;

pub use dense::{BipartiteState, DenseOperator, StateVector};
pub use pauli::{
    commute_check, conventional_phase_matrix, eigenspace_projectors, outcome_projector, outcome_state, xz_matrix,
    MAX_MATRIX_QUBITS,
};
pub use strategy::{bob_twist, joint_distribution, quantum_strategy_z1, shared_state_norm, tau_expectation, QuantumOracle, QuantumRound};

