use std::fs::File;
use std::io::BufReader;
use std::path::{Path, PathBuf};

use num_rational::Ratio;
use pauli_core::games::{evaluate, game_z1, EvalMode, Strategy};
use pauli_core::solvers::cval_of;
use pauli_core::MaximalSystem;
use pauli_lab::formats::{read_contextual, read_outcomes, read_partial, read_subspaces};
use pauli_lab::verify::{consistent_by_evaluation, partial_is_consistent};

fn fixture(name: &str) -> BufReader<File> {
    let path: PathBuf = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name);
    BufReader::new(File::open(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display())))
}

#[test]
fn pval_certificate() {
    let sys = MaximalSystem::new(2).unwrap();
    let f = read_partial(&sys, fixture("outcomes/pval-n2.txt")).unwrap();
    assert_eq!(f.defined(), 12);
    assert!(partial_is_consistent(&sys, &f).unwrap());
}

#[test]
fn cval_certificate() {
    let sys = MaximalSystem::new(2).unwrap();
    let f = read_contextual(&sys, fixture("outcomes/cval-n2.txt")).unwrap();
    assert_eq!(cval_of(&sys, &f).unwrap().value, Ratio::new(2, 45));
}

#[test]
fn val_syn_certificate() {
    let g = game_z1().unwrap();
    let f = read_contextual(g.system(), fixture("outcomes/valsyn-z1.txt")).unwrap();
    let v = evaluate(&g, &Strategy::Synchronous(f), EvalMode::Exact).unwrap();
    assert_eq!(v.exact, Some(Ratio::new(13, 15)));
}

#[test]
fn hand_written_pairs() {
    let (n, ok) = read_outcomes(fixture("outcomes/consistent-pair.txt")).unwrap();
    assert_eq!(n, 2);
    assert!(ok[0].consistent(&ok[1]).unwrap());
    assert!(consistent_by_evaluation(&ok[0], &ok[1]).unwrap());
    let (_, bad) = read_outcomes(fixture("outcomes/inconsistent-pair.txt")).unwrap();
    assert_eq!(bad[0].base(), bad[1].base());
    assert!(!bad[0].consistent(&bad[1]).unwrap());
    assert!(!consistent_by_evaluation(&bad[0], &bad[1]).unwrap());
    let (n, t) = read_outcomes(fixture("outcomes/trivial.txt")).unwrap();
    assert_eq!((n, t.len(), t[0].base().dim()), (3, 1, 0));
}

#[test]
fn subspace_fixture() {
    let (n, subs) = read_subspaces(fixture("l22.txt")).unwrap();
    assert_eq!((n, subs.len()), (2, 15));
    assert!(subs.iter().all(|s| s.dim() == 2));
}
