//! The entangled strategy for measurement-agreement games.
//!
//! Both players share `Σ_i |i⟩|i⟩/√d` on `n + n` qubits. Alice measures her
//! question's operators `C(a)`. Bob measures his and submits the twisted
//! outcome `b ↦ b + b₁·b₂`, which is again linear/antilinear on isotropic
//! subspaces. On the maximally entangled state `p(a, b) = tr(P_a Q_bᵀ)/d`.

use alloc::vec;
use alloc::vec::Vec;

use rand::Rng;

use super::dense::{BipartiteState, StateVector};
use super::pauli::{conventional_phase_matrix, outcome_state, MAX_MATRIX_QUBITS};
use crate::error::{Error, Result};
use crate::gf2::GF2Vector;
use crate::lattice::{MaximalSystem, Measurement, Outcome};
#[allow(unused_imports)]
use num_traits::Float;

/// Value mask of Bob's submitted outcome given his raw outcome mask.
pub fn bob_twist(y: &Measurement, raw: u32) -> u32 {
    let mut t = raw;
    for (i, b) in y.basis().enumerate() {
        if b.xz_overlap() {
            t ^= 1 << i;
        }
    }
    t
}

/// Joint distribution of (Alice's outcome, Bob's submitted outcome) for
/// maximal questions `x`, `y`: `table[a][b]`.
pub fn joint_distribution(x: &Measurement, y: &Measurement) -> Result<Vec<Vec<f64>>> {
    let n = x.n();
    if n > MAX_MATRIX_QUBITS {
        return Err(Error::Capacity { what: "qubits for the entangled strategy", value: n as u64, limit: MAX_MATRIX_QUBITS as u64 });
    }
    let xs = states_of(x)?;
    let ys = states_of(y)?;
    Ok(joint_from_states(&xs, &ys, y))
}

fn states_of(m: &Measurement) -> Result<Vec<StateVector>> {
    (0..1u32 << m.dim()).map(|o| outcome_state(&Outcome::new(m.clone(), o)?)).collect()
}

fn joint_from_states(xs: &[StateVector], ys: &[StateVector], y: &Measurement) -> Vec<Vec<f64>> {
    let d = xs[0].dim() as f64;
    let mut table = vec![vec![0.0; ys.len()]; xs.len()];
    for (a, s) in xs.iter().enumerate() {
        for (raw, t) in ys.iter().enumerate() {
            // tr(|s⟩⟨s| (|t⟩⟨t|)ᵀ) = |⟨s|t̄⟩|²
            let p = s.inner(&t.conj()).norm_sqr() / d;
            table[a][bob_twist(y, raw as u32) as usize] += p;
        }
    }
    table
}

/// Cached stabilizer states of every maximal outcome of a system.
#[derive(Clone, Debug)]
pub struct QuantumOracle {
    n: usize,
    states: Vec<Vec<StateVector>>,
    conj_states: Vec<Vec<StateVector>>,
}

impl QuantumOracle {
    pub fn new(system: &MaximalSystem) -> Result<Self> {
        let n = system.n();
        if n > MAX_MATRIX_QUBITS {
            return Err(Error::Capacity { what: "qubits for the entangled strategy", value: n as u64, limit: MAX_MATRIX_QUBITS as u64 });
        }
        let mut states = Vec::with_capacity(system.len());
        let mut conj_states = Vec::with_capacity(system.len());
        for m in system.maximal() {
            let s = states_of(m)?;
            let mut c = vec![None; s.len()];
            for (raw, t) in s.iter().enumerate() {
                c[bob_twist(m, raw as u32) as usize] = Some(t.conj());
            }
            conj_states.push(c.into_iter().map(|t| t.expect("twist is a bijection")).collect());
            states.push(s);
        }
        Ok(Self { n, states, conj_states })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `p(a, b)` for Alice on `x` and Bob (submitted outcome `b`) on `y`.
    #[inline]
    pub fn probability(&self, x: usize, a: usize, y: usize, b: usize) -> f64 {
        let d = (1usize << self.n) as f64;
        self.states[x][a].inner(&self.conj_states[y][b]).norm_sqr() / d
    }

    pub fn joint(&self, x: usize, y: usize) -> Vec<Vec<f64>> {
        let k = 1usize << self.n;
        (0..k).map(|a| (0..k).map(|b| self.probability(x, a, y, b)).collect()).collect()
    }

    /// Samples `(a, b)` from the joint distribution.
    pub fn sample<R: Rng + ?Sized>(&self, x: usize, y: usize, rng: &mut R) -> (usize, usize) {
        let k = 1usize << self.n;
        let u: f64 = rng.gen();
        let mut acc = 0.0;
        let mut last = (0, 0);
        for a in 0..k {
            for b in 0..k {
                let p = self.probability(x, a, y, b);
                if p > 0.0 {
                    last = (a, b);
                }
                acc += p;
                if u < acc {
                    return (a, b);
                }
            }
        }
        last
    }
}

/// Result of the entangled strategy on one question pair.
#[derive(Clone, Debug)]
pub struct QuantumRound {
    pub alice: usize,
    pub bob: usize,
    pub win_probability: f64,
    pub alice_marginal: Vec<f64>,
}

/// Plays the entangled strategy on the two-qubit question `(x, y)` with
/// `dim(x ∩ y) = 1`: samples answers and reports the exact win probability.
pub fn quantum_strategy_z1<R: Rng + ?Sized>(system: &MaximalSystem, oracle: &QuantumOracle, x: usize, y: usize, rng: &mut R) -> Result<QuantumRound> {
    if system.n() != 2 || oracle.n() != 2 || x >= system.len() || y >= system.len() || system.distance(x, y) != 1 {
        return Err(Error::InvalidArgument("not a question pair of the two-qubit agreement game".into()));
    }
    let (alice, bob) = oracle.sample(x, y, rng);
    let joint = oracle.joint(x, y);
    let mut win = 0.0;
    for (a, row) in joint.iter().enumerate() {
        for (b, p) in row.iter().enumerate() {
            if system.consistent(x, a, y, b) {
                win += p;
            }
        }
    }
    let alice_marginal = joint.iter().map(|row| row.iter().sum()).collect();
    Ok(QuantumRound { alice, bob, win_probability: win, alice_marginal })
}

/// `⟨ψ| C(z) ⊗ C(z) |ψ⟩` on the maximally entangled state.
pub fn tau_expectation(z: &GF2Vector) -> Result<f64> {
    let c = conventional_phase_matrix(z)?;
    let psi = BipartiteState::maximally_entangled(c.dim());
    Ok(psi.expectation(&c, &c).re)
}

/// Sum of |amplitude|² of the shared state, for sanity checks.
pub fn shared_state_norm(n: usize) -> f64 {
    BipartiteState::maximally_entangled(1 << n).norm().abs()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn z1_questions_always_win() {
        let sys = MaximalSystem::new(2).unwrap();
        let q = QuantumOracle::new(&sys).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let pairs = sys.pairs_at_distance(1).unwrap();
        for &(x, y) in &pairs.pairs {
            let r = quantum_strategy_z1(&sys, &q, x as usize, y as usize, &mut rng).unwrap();
            assert!((r.win_probability - 1.0).abs() < 1e-9);
            assert!(sys.consistent(x as usize, r.alice, y as usize, r.bob));
            for p in r.alice_marginal {
                assert!((p - 0.25).abs() < 1e-12);
            }
        }
        assert!(quantum_strategy_z1(&sys, &q, 0, 0, &mut rng).is_err());
    }

    #[test]
    fn tau_signs() {
        for z in GF2Vector::all(2).unwrap() {
            let want = if z.xz_overlap() { -1.0 } else { 1.0 };
            assert!((tau_expectation(&z).unwrap() - want).abs() < 1e-12);
        }
        assert!((shared_state_norm(2) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn joint_sums_to_one() {
        let sys = MaximalSystem::new(2).unwrap();
        let t = joint_distribution(sys.measurement(0), sys.measurement(5)).unwrap();
        let s: f64 = t.iter().flatten().sum();
        assert!((s - 1.0).abs() < 1e-12);
    }
}
