//! Runs every acceptance criterion and prints one line each. Exits non-zero
//! when any criterion fails.

use std::process::ExitCode;

use pauli_lab::verify::{run_criterion, Options};

fn main() -> ExitCode {
    pauli_lab::init_threads();
    let opts = Options::default();
    let mut failed = Vec::new();
    for id in 1..=11 {
        let r = run_criterion(id, &opts);
        println!("{} ({:.2} s)", r.summary_line(), r.elapsed.as_secs_f64());
        for c in r.checks.iter().filter(|c| !c.pass) {
            println!("    failed check {}: {}", c.name, c.detail);
        }
        if !r.status.ok() {
            failed.push(id);
        }
    }
    if failed.is_empty() {
        println!("acceptance: all criteria pass");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: criteria failed: {failed:?}");
        ExitCode::FAILURE
    }
}
