use num_rational::Ratio;
use pauli_core::games::*;
use pauli_core::solvers::{contradiction_triangles, cval_of, Certificate, ContextualAssignment};
use pauli_core::{MaximalSystem, DEFAULT_SEED};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn ratio(r: Ratio<u64>) -> Ratio<u128> {
    Ratio::new(u128::from(*r.numer()), u128::from(*r.denom()))
}

fn synchronous_optimum() -> (Ratio<u64>, ContextualAssignment) {
    let r = val_syn_search(&game_z1().unwrap(), 10_000_000).unwrap();
    assert!(r.report.proof_closed && r.below_one);
    let Certificate::Contextual(f) = r.report.certificate else { panic!("no certificate") };
    (r.report.lower, f)
}

#[test]
fn quantum_wins_every_z1_question() {
    let g = game_z1().unwrap();
    let v = evaluate(&g, &Strategy::Quantum, EvalMode::Exact).unwrap();
    assert_eq!(v.samples, 90);
    assert!(1.0 - v.worst_round.unwrap() < 1e-9);
}

#[test]
fn quantum_wins_agreement_two_qubits() {
    let g = game_pauli_agreement(2).unwrap();
    let v = evaluate(&g, &Strategy::Quantum, EvalMode::Exact).unwrap();
    assert!(1.0 - v.worst_round.unwrap() < 1e-9);
}

#[test]
fn synchronous_value_of_z1() {
    let (value, f) = synchronous_optimum();
    assert_eq!(value, Ratio::new(13, 15));
    let sys = MaximalSystem::new(2).unwrap();
    let pairs = sys.pairs_at_distance(1).unwrap();
    let tri = contradiction_triangles(&sys, &pairs, &f).unwrap();
    assert_eq!(tri.inconsistent_pairs, 12);
    assert_eq!(Ratio::new(tri.q - tri.inconsistent_pairs, tri.q), value);
}

#[test]
fn synchronous_loss_matches_inconsistent_pairs() {
    let g = game_z1().unwrap();
    let sys = g.system();
    let pairs = sys.pairs_at_distance(1).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED);
    for _ in 0..100 {
        let f = ContextualAssignment::random(sys, &mut rng);
        let v = evaluate(&g, &Strategy::Synchronous(f.clone()), EvalMode::Exact).unwrap().exact.unwrap();
        let tri = contradiction_triangles(sys, &pairs, &f).unwrap();
        assert_eq!(v, ratio(Ratio::new(tri.q - tri.inconsistent_pairs, tri.q)));
    }
}

#[test]
fn agreement_synchronous_is_one_minus_twice_cval() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for n in [2, 3] {
        let g = game_pauli_agreement(n).unwrap();
        for _ in 0..10 {
            let f = ContextualAssignment::random(g.system(), &mut rng);
            let v = evaluate(&g, &Strategy::Synchronous(f.clone()), EvalMode::Exact).unwrap().exact.unwrap();
            let c = cval_of(g.system(), &f).unwrap().value;
            assert_eq!(v, ratio(Ratio::from_integer(1) - c * 2));
        }
    }
}

#[test]
fn exact_and_monte_carlo_agree() {
    let (_, f) = synchronous_optimum();
    let z1 = game_z1().unwrap();
    let agree = game_pauli_agreement(2).unwrap();
    let z1_2 = game_parallel(&z1, 2).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let h = ContextualAssignment::random(z1.system(), &mut rng);
    let strategies = [
        Strategy::Random,
        Strategy::Quantum,
        Strategy::Synchronous(f.clone()),
        Strategy::Deterministic { alice: f.clone(), bob: h },
    ];
    for game in [&z1, &agree, &z1_2] {
        for (i, s) in strategies.iter().enumerate() {
            let exact = evaluate(game, s, EvalMode::Exact).unwrap();
            let mc = evaluate(game, s, EvalMode::MonteCarlo { samples: 100_000, seed: DEFAULT_SEED + i as u64 }).unwrap();
            assert!(mc.covers(exact.value), "{} {}: exact {} vs {:?}", game.name(), s.label(), exact.value, mc.interval);
        }
    }
}

#[test]
fn random_agreement_is_one_half() {
    for n in [2, 4] {
        let g = game_pauli_agreement(n).unwrap();
        let mc = evaluate(&g, &Strategy::Random, EvalMode::MonteCarlo { samples: 100_000, seed: DEFAULT_SEED }).unwrap();
        assert!(mc.covers(0.5), "n = {n}: {:?}", mc.interval);
    }
    let v = evaluate(&game_pauli_agreement(2).unwrap(), &Strategy::Random, EvalMode::Exact).unwrap();
    assert_eq!(v.exact, Some(Ratio::new(1, 2)));
}

#[test]
fn value_chain_is_monotone() {
    let (syn, f) = synchronous_optimum();
    let g = game_z1().unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED);
    let det = best_response_search(&g, Some(&Strategy::Synchronous(f)), 100, &mut rng).unwrap();
    let eps = 1.0 - *syn.numer() as f64 / *syn.denom() as f64;
    let det_f = *det.value.numer() as f64 / *det.value.denom() as f64;
    assert!(ratio(syn) <= det.value);
    assert!(det_f <= syn_to_loc_bound(eps).unwrap() + 1e-12);
    let q = evaluate(&g, &Strategy::Quantum, EvalMode::Exact).unwrap();
    assert!(det_f <= q.value + 1e-12);

    let g2 = game_parallel(&g, 2).unwrap();
    let det2 = best_response_search(&g2, Some(&det.strategy), 4, &mut rng).unwrap();
    assert!(det2.value >= det.value * det.value);
    assert!(det2.value <= det.value);
}

#[test]
fn repetition_chain_from_synchronous_gap() {
    let (syn, _) = synchronous_optimum();
    let eps = 1.0 - *syn.numer() as f64 / *syn.denom() as f64;
    for n in [2, 4, 8, 16] {
        let c = repetition_chain(eps, n).unwrap();
        assert!(c.agree, "{c:?}");
        assert_eq!(c.copies, n / 2);
    }
}

#[test]
fn protocol_marginals_are_uniform() {
    let t = protocol_marginals(&game_z1().unwrap(), 1_000_000, DEFAULT_SEED).unwrap();
    assert!(t.pass, "{t:?}");
}

#[test]
fn hint_blocks_at_four_qubits() {
    let sys = MaximalSystem::new(4).unwrap();
    let block = MaximalSystem::new(2).unwrap();
    let pairs = sys.pairs_at_distance(2).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED);
    for _ in 0..500 {
        let (x, y) = pairs.pairs[rng.gen_range(0..pairs.len())];
        let h = hint_transfer(&sys, &block, x as usize, y as usize).unwrap();
        assert!(h.product_form && h.map.is_symplectic());
        for j in 0..2 {
            assert_eq!(block.distance(h.alice_blocks[j] as usize, h.bob_blocks[j] as usize), 1);
        }
    }
    let far = (1..sys.len()).find(|&y| sys.distance(0, y) != 2).unwrap();
    assert!(hint_transfer(&sys, &block, 0, far).is_err());
}

#[test]
fn pulled_back_strategies_keep_wins() {
    let sys = MaximalSystem::new(4).unwrap();
    let block = MaximalSystem::new(2).unwrap();
    let pairs = sys.pairs_at_distance(2).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED ^ 1);
    let mut wins = 0;
    for _ in 0..10_000 {
        let (x, y) = pairs.pairs[rng.gen_range(0..pairs.len())];
        let h = hint_transfer(&sys, &block, x as usize, y as usize).unwrap();
        let a: Vec<u16> = (0..2).map(|_| rng.gen_range(0..4)).collect();
        let b: Vec<u16> = (0..2).map(|_| rng.gen_range(0..4)).collect();
        let image_wins =
            (0..2).all(|j| block.consistent(h.alice_blocks[j] as usize, usize::from(a[j]), h.bob_blocks[j] as usize, usize::from(b[j])));
        let oa = h.pull_back_alice(&sys, &block, &a).unwrap();
        let ob = h.pull_back_bob(&sys, &block, &b).unwrap();
        assert_eq!(sys.consistent(x as usize, usize::from(oa), y as usize, usize::from(ob)), image_wins);
        wins += usize::from(image_wins);
    }
    assert!(wins > 1500 && wins < 3500, "{wins}");
}

#[test]
fn quantum_wins_half_game_four_qubits() {
    let g = game_z_half(4).unwrap();
    assert_eq!(g.round_count(), Some(280 * 2295));
    let v = evaluate(&g, &Strategy::Quantum, EvalMode::Exact).unwrap();
    assert!(1.0 - v.worst_round.unwrap() < 1e-9);
}
