//! Nonlocal games on maximal Pauli measurements.

mod bounds;
mod evaluate;
pub mod hint;
mod search;
mod spec;
mod strategy;

pub use bounds::{
    parallel_repetition_bound, protocol_check, protocol_marginals, referee_draw, repetition_chain, syn_to_loc_bound, MarginalTest,
    ProtocolCheck, ProtocolDraw, RepetitionChain,
};
pub use evaluate::{evaluate, evaluate_with, EvalMode, ValueEstimate};
pub use hint::{canonical_pair, hint_transfer, Hint, SymplecticMap};
pub use search::{best_response_search, val_syn_search, BestResponse, SynReport};
pub use spec::{
    game_parallel, game_pauli_agreement, game_pauli_agreement_on, game_z1, game_z_half, game_z_half_on, BaseRound, GameSpec, Questions,
    WinRule, MAX_EXACT_ROUNDS,
};
pub use strategy::{Strategy, TabulatedStrategy};
