//! Solvers for partial and contextual hidden-variable assignments.

mod assignment;
mod cval;
mod mis;
mod pval;
mod theta;
mod triangles;

pub use cval::{cval_exact, cval_local_search, cval_of, CvalEvaluation};
pub use assignment::{Certificate, ContextualAssignment, PartialAssignment, SolveReport};
pub use mis::{
    brute_force_alpha, greedy_clique_cover, greedy_independent_set, is_clique_cover, is_independent_set, local_search,
    maximum_independent_set, maximum_independent_set_from, MisResult,
};
pub use pval::{
    fiber_averaging, no_complete_consistent, pval_exact, FiberAveraging, SEED_ROUNDS, pval_level2, square_averaging, square_subspaces, CompletenessReport, LevelTwo,
    SquareAveraging,
};
pub use triangles::{contradiction_triangles, cval_lower_chain, gw_parameters, lemma_bound_for, CvalChain, TriangleReport};
pub use theta::{
    product_t, stabilizer_alpha_theta, theta_sn, walk_pipeline, AlphaThetaRatio, ProductT, ThetaCertificate,
    WalkReport,
};
