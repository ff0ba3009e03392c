use pauli_core::graphs::*;
use pauli_core::MaximalSystem;

#[test]
fn half_graph_four_qubits() {
    let sys = MaximalSystem::new(4).unwrap();
    let c = gw_check(&sys).unwrap();
    assert!(c.passes(), "{:?}", c.check.expected);
    let s = &c.check.numeric;
    assert_eq!((s.max, s.lambda, s.ratio), (56.0, 14.0, 0.25));
    assert_eq!(s.eigenvalues.len(), 135);
}

#[test]
fn full_graph_four_qubits() {
    let sys = MaximalSystem::new(4).unwrap();
    let c = gw_prime_check(&sys).unwrap();
    assert!(c.matches);
    let set: Vec<f64> = c.numeric.multiplicities().into_iter().map(|(v, _)| v).collect();
    assert_eq!(set, vec![14.0, 5.0, -1.0, -7.0]);
    assert_eq!(c.numeric.lambda, 7.0);
}

#[test]
fn bbt_four_qubits() {
    let sys = MaximalSystem::new(4).unwrap();
    let b = bbt_analysis(&sys).unwrap();
    assert_eq!((b.left, b.right), (2295, 5355));
    assert!(b.decomposition_holds);
    assert!(b.check.matches, "dev {} expected {:?}", b.check.max_deviation, b.check.expected);
    assert!((b.delta * b.delta - b.delta_sq_closed).abs() < 1e-6 * b.delta_sq_closed);
    assert!(b.constant <= 8.0, "C = {}", b.constant);
    eprintln!("bbt n=4: {:?} lambda {} delta {} C {}", b.check.expected, b.lambda, b.delta, b.constant);
}
