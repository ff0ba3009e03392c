//! Files, reports and command implementations around `pauli-core`.

pub mod commands;
pub mod formats;
pub mod output;
pub mod report;
pub mod verify;

/// Caps the global thread pool at `PAULI_LAB_THREADS` when it is set.
pub fn init_threads() {
    if let Some(n) = std::env::var("PAULI_LAB_THREADS").ok().and_then(|v| v.trim().parse::<usize>().ok()).filter(|&n| n > 0) {
        // A second call finds the pool already built; the first cap stands.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
}
