//! The measurement semilattice: distance, outcomes, consistency, and counts.

pub mod counting;
mod outcome;
mod phase;
mod system;

pub use outcome::{distance, outcomes, Measurement, Outcome};
pub use phase::phase_w;
pub use system::{MaximalSystem, PairTable};

