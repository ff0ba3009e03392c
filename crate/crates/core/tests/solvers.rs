use num_rational::Ratio;
use pauli_core::solvers::*;
use pauli_core::MaximalSystem;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn cval_two_qubits_exact() {
    let sys = MaximalSystem::new(2).unwrap();
    let c = cval_exact(&sys, u64::MAX, None).unwrap();
    assert!(c.proof_closed);
    assert_eq!(c.optimum(), Some(Ratio::new(2, 45)));
    let Certificate::Contextual(f) = &c.certificate else { panic!() };
    assert_eq!(cval_of(&sys, f).unwrap().value, Ratio::new(2, 45));
}

#[test]
fn cval_four_qubits_local_search_is_an_upper_bound() {
    let sys = MaximalSystem::new(4).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let c = cval_local_search(&sys, 4, 20, &mut rng).unwrap();
    assert!(!c.proof_closed);
    assert!(c.upper < Ratio::new(1, 4));
    let Certificate::Contextual(f) = &c.certificate else { panic!() };
    assert_eq!(cval_of(&sys, f).unwrap().value, c.upper);
}

#[test]
fn pval_three_qubits_bounds() {
    let sys = MaximalSystem::new(3).unwrap();
    let r = pval_exact(&sys, 2_000_000).unwrap();
    assert!(r.bounds_ordered());
    assert!(r.upper <= Ratio::new(4, 5));
    assert!(r.lower >= Ratio::new(8, 15));
    let Certificate::Partial(p) = &r.certificate else { panic!() };
    assert!(p.validate(&sys));
}

#[test]
fn walk_pipeline_two_qubits() {
    let sys = MaximalSystem::new(2).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let w = walk_pipeline(&sys, Ratio::new(4, 5), 1, 42, 200_000, &mut rng).unwrap();
    assert!(w.closed && w.cover_valid && w.bound_certified);
    assert_eq!((w.vertices, w.theta, w.alpha_upper), (60, 15, 12));
    let w = walk_pipeline(&sys, Ratio::new(4, 5), 2, 42, 200_000, &mut rng).unwrap();
    assert_eq!((w.vertices, w.theta), (480, 30));
    assert!(w.cover_valid && w.bound_holds && w.alpha_lower <= w.alpha_upper);
}

#[test]
fn triangle_bounds_on_random_assignments() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for n in [2, 4] {
        let sys = MaximalSystem::new(n).unwrap();
        let pairs = sys.pairs_at_distance(n / 2).unwrap();
        for _ in 0..10 {
            let f = ContextualAssignment::random(&sys, &mut rng);
            let t = contradiction_triangles(&sys, &pairs, &f).unwrap();
            assert!(t.aggregate_holds && t.per_direction_holds && t.disagreement_identity);
        }
    }
}
