//! Graphs built from the measurement lattice, their spectra, and the
//! mixing and hitting inequalities.

mod analysis;
mod bounds;
mod builders;
pub mod dual_polar;
mod graph;
mod mixing;
mod products;
mod spectrum;

pub use analysis::{bbt_analysis, gw_check, gw_prime_check, BbtAnalysis, HalfGraphCheck, SpectralCheck, MAX_BBT_QUBITS};
pub use bounds::{appendix_c_bounds, eigenvalue_bound_range, q_exponent, sandwich_holds, EigenvalueBounds};
pub use builders::{
    build_b_n2, build_gw, build_gw_prime, build_sn, default_direction, sn_orthogonality_agreement, OutcomeVertex, MAX_SN_QUBITS,
};
pub use dual_polar::{dual_polar_eigenvalues, DistanceScheme, DualPolarClosedForm, SchemeEigenspace};
pub use graph::{BipartiteGraph, LabeledGraph};
pub use mixing::{
    bipartite_mixing_check, bipartite_mixing_trials, hitting_bound, hitting_walk_test, mixing_check, mixing_trials, random_sets,
    random_subset, HittingReport, MixingReport, MixingTrials,
};
pub use products::{
    disjunctive_product, random_regular_graph, t_value, walk_bound, walk_graph, walks, WalkVertex, MAX_WALK_VERTICES,
};
pub use spectrum::{
    group_values, spectral_parameter, spectrum, spectrum_with, symmetric_spectrum, SpectrumMethod, SpectrumReport,
    MAX_SPECTRUM_VERTICES, SNAP_TOLERANCE,
};
