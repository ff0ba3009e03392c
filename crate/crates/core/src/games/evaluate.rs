use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::spec::GameSpec;
use super::strategy::Strategy;
use crate::error::{Error, Result};
use crate::matrix::QuantumOracle;
use crate::stats::{wilson_interval, Z_99};
#[allow(unused_imports)]
use num_traits::Float;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EvalMode {
    /// Iterate every round with its weight.
    Exact,
    /// Average over seeded samples.
    MonteCarlo { samples: u64, seed: u64 },
}

/// The value of a strategy on a game.
///
/// Exact evaluations set `exact` when the value is rational (classical and
/// random strategies) and never carry an interval. Monte Carlo estimates
/// carry a 99% Wilson interval.
#[derive(Clone, Debug, PartialEq)]
pub struct ValueEstimate {
    pub game: String,
    pub n: usize,
    pub copies: usize,
    pub strategy: String,
    pub mode: String,
    pub value: f64,
    pub exact: Option<Ratio<u128>>,
    pub interval: Option<(f64, f64)>,
    /// Rounds iterated or sampled.
    pub samples: u64,
    pub seed: Option<u64>,
    /// Smallest per-round win probability (exact mode).
    pub worst_round: Option<f64>,
}

impl ValueEstimate {
    /// Whether `v` lies in the interval, or equals the exact value to `1e-12`.
    pub fn covers(&self, v: f64) -> bool {
        match self.interval {
            Some((lo, hi)) => lo <= v && v <= hi,
            None => (self.value - v).abs() <= 1e-12,
        }
    }
}

/// Evaluates `strategy` on `game`, building the entangled-state oracle when
/// the strategy is quantum.
pub fn evaluate(game: &GameSpec, strategy: &Strategy, mode: EvalMode) -> Result<ValueEstimate> {
    let oracle = match strategy {
        Strategy::Quantum => Some(QuantumOracle::new(game.system())?),
        _ => None,
    };
    evaluate_with(game, strategy, mode, oracle.as_ref())
}

/// As [`evaluate`] with a prebuilt oracle.
pub fn evaluate_with(game: &GameSpec, strategy: &Strategy, mode: EvalMode, oracle: Option<&QuantumOracle>) -> Result<ValueEstimate> {
    strategy.check(game)?;
    if matches!(strategy, Strategy::Quantum) && oracle.is_none_or(|o| o.n() != game.n()) {
        return Err(Error::InvalidArgument("quantum evaluation needs an oracle for the game's system".into()));
    }
    let mut est = ValueEstimate {
        game: game.name().to_string(),
        n: game.n(),
        copies: game.copies(),
        strategy: strategy.label().to_string(),
        mode: String::new(),
        value: 0.0,
        exact: None,
        interval: None,
        samples: 0,
        seed: None,
        worst_round: None,
    };
    match mode {
        EvalMode::Exact => {
            est.mode = "exact".to_string();
            exact(game, strategy, oracle, &mut est)?;
        }
        EvalMode::MonteCarlo { samples, seed } => {
            est.mode = "mc".to_string();
            monte_carlo(game, strategy, oracle, samples, seed, &mut est)?;
        }
    }
    Ok(est)
}

/// Per-round win probability of a coordinatewise strategy on base rounds,
/// as a numerator over `den`.
enum BaseTable {
    Counts { num: Vec<u128>, den: u128 },
    Real(Vec<f64>),
}

fn base_table(game: &GameSpec, strategy: &Strategy, oracle: Option<&QuantumOracle>) -> BaseTable {
    let rounds = game.base_rounds();
    let k = game.system().outcome_count() as u16;
    match strategy {
        Strategy::Deterministic { .. } | Strategy::Synchronous(_) => {
            let (alice, bob) = match strategy {
                Strategy::Deterministic { alice, bob } => (alice, bob),
                Strategy::Synchronous(f) => (f, f),
                _ => unreachable!(),
            };
            let num = rounds.iter().enumerate().map(|(i, r)| u128::from(game.base_wins(i, alice.get(r.x as usize), bob.get(r.y as usize)))).collect();
            BaseTable::Counts { num, den: 1 }
        }
        Strategy::Random => {
            let num = (0..rounds.len()).map(|i| (0..k).flat_map(|a| (0..k).map(move |b| (a, b))).filter(|&(a, b)| game.base_wins(i, a, b)).count() as u128).collect();
            BaseTable::Counts { num, den: u128::from(k) * u128::from(k) }
        }
        Strategy::Quantum => {
            let o = oracle.expect("checked by caller");
            let p = rounds
                .iter()
                .enumerate()
                .map(|(i, r)| {
                    let mut acc = 0.0;
                    for a in 0..k {
                        for b in 0..k {
                            if game.base_wins(i, a, b) {
                                acc += o.probability(r.x as usize, usize::from(a), r.y as usize, usize::from(b));
                            }
                        }
                    }
                    acc
                })
                .collect();
            BaseTable::Real(p)
        }
        Strategy::Tabulated(_) => unreachable!("tabulated strategies are evaluated per product round"),
    }
}

fn exact(game: &GameSpec, strategy: &Strategy, oracle: Option<&QuantumOracle>, est: &mut ValueEstimate) -> Result<()> {
    let total = game.round_count().filter(|_| game.is_exhaustible()).ok_or(Error::Capacity {
        what: "rounds for exact evaluation",
        value: game.round_count().unwrap_or(u64::MAX),
        limit: super::spec::MAX_EXACT_ROUNDS,
    })?;
    est.samples = total;
    let copies = game.copies();
    let len = game.base_rounds().len();
    if let Strategy::Tabulated(_) = strategy {
        let mut wins = 0u64;
        for r in 0..total {
            let q = game.questions(r);
            let a = strategy.alice_answers(&q.alice).expect("classical");
            let b = strategy.bob_answers(&q.bob).expect("classical");
            wins += u64::from(game.wins(r, &a, &b));
        }
        let v = Ratio::new(u128::from(wins), u128::from(total));
        est.value = wins as f64 / total as f64;
        est.worst_round = Some(if wins == total { 1.0 } else { 0.0 });
        est.exact = Some(v);
        return Ok(());
    }
    let table = base_table(game, strategy, oracle);
    let mut digits = vec![0usize; copies];
    match table {
        BaseTable::Counts { num, den } => {
            let mut sum: Option<u128> = Some(0);
            let mut sum_f = 0.0;
            let mut worst = f64::INFINITY;
            let scale = (den as f64).powi(copies as i32);
            for _ in 0..total {
                let mut prod: Option<u128> = Some(1);
                let mut prod_f = 1.0;
                for &d in &digits {
                    prod = prod.and_then(|p| p.checked_mul(num[d]));
                    prod_f *= num[d] as f64;
                }
                sum = sum.zip(prod).and_then(|(s, p)| s.checked_add(p));
                sum_f += prod_f;
                worst = worst.min(prod_f / scale);
                advance(&mut digits, len);
            }
            est.value = sum_f / scale / total as f64;
            est.worst_round = Some(worst);
            let full_den = den.checked_pow(copies as u32).and_then(|d| d.checked_mul(u128::from(total)));
            est.exact = sum.zip(full_den).map(|(s, d)| Ratio::new(s, d));
            if let Some(v) = est.exact {
                est.value = *v.numer() as f64 / *v.denom() as f64;
            }
        }
        BaseTable::Real(p) => {
            let mut sum = 0.0;
            let mut worst = f64::INFINITY;
            for _ in 0..total {
                let prod: f64 = digits.iter().map(|&d| p[d]).product();
                sum += prod;
                worst = worst.min(prod);
                advance(&mut digits, len);
            }
            est.value = sum / total as f64;
            est.worst_round = Some(worst);
        }
    }
    Ok(())
}

#[inline]
fn advance(digits: &mut [usize], len: usize) {
    for d in digits {
        *d += 1;
        if *d < len {
            return;
        }
        *d = 0;
    }
}

fn monte_carlo(game: &GameSpec, strategy: &Strategy, oracle: Option<&QuantumOracle>, samples: u64, seed: u64, est: &mut ValueEstimate) -> Result<()> {
    if samples == 0 {
        return Err(Error::InvalidArgument("Monte Carlo needs at least one sample".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let k = game.system().outcome_count() as u16;
    let copies = game.copies();
    let mut wins = 0u64;
    let mut a = vec![0u16; copies];
    let mut b = vec![0u16; copies];
    for _ in 0..samples {
        let r = game.sample_round(&mut rng);
        let q = game.questions(r);
        match strategy {
            Strategy::Random => {
                for i in 0..copies {
                    a[i] = rng.gen_range(0..k);
                    b[i] = rng.gen_range(0..k);
                }
            }
            Strategy::Quantum => {
                let o = oracle.expect("checked by caller");
                for i in 0..copies {
                    let (x, y) = o.sample(q.alice[i] as usize, q.bob[i] as usize, &mut rng);
                    a[i] = x as u16;
                    b[i] = y as u16;
                }
            }
            _ => {
                a = strategy.alice_answers(&q.alice).expect("classical");
                b = strategy.bob_answers(&q.bob).expect("classical");
            }
        }
        wins += u64::from(game.wins(r, &a, &b));
    }
    est.samples = samples;
    est.seed = Some(seed);
    est.value = wins as f64 / samples as f64;
    est.interval = Some(wilson_interval(wins, samples, Z_99));
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::super::spec::{game_parallel, game_pauli_agreement, game_z1};
    use super::super::strategy::TabulatedStrategy;
    use super::*;
    use crate::solvers::ContextualAssignment;

    #[test]
    fn random_values() {
        let g = game_z1().unwrap();
        let v = evaluate(&g, &Strategy::Random, EvalMode::Exact).unwrap();
        assert_eq!(v.exact, Some(Ratio::new(1, 2)));
        assert!(v.interval.is_none());
        let a = game_pauli_agreement(2).unwrap();
        let v = evaluate(&a, &Strategy::Random, EvalMode::Exact).unwrap();
        assert_eq!(v.exact, Some(Ratio::new(1, 2)));
        let mc = evaluate(&a, &Strategy::Random, EvalMode::MonteCarlo { samples: 20_000, seed: 3 }).unwrap();
        assert!(mc.covers(0.5), "{mc:?}");
        assert_eq!(mc.seed, Some(3));
    }

    #[test]
    fn quantum_wins_z1() {
        let g = game_z1().unwrap();
        let v = evaluate(&g, &Strategy::Quantum, EvalMode::Exact).unwrap();
        assert!((v.value - 1.0).abs() < 1e-9);
        assert!(1.0 - v.worst_round.unwrap() < 1e-9);
    }

    #[test]
    fn product_of_coordinatewise() {
        let g = game_z1().unwrap();
        let g2 = game_parallel(&g, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let f = ContextualAssignment::random(g.system(), &mut rng);
        let h = ContextualAssignment::random(g.system(), &mut rng);
        let s = Strategy::Deterministic { alice: f.clone(), bob: h.clone() };
        let one = evaluate(&g, &s, EvalMode::Exact).unwrap().exact.unwrap();
        let two = evaluate(&g2, &s, EvalMode::Exact).unwrap().exact.unwrap();
        assert_eq!(two, one * one);
        let t = Strategy::Tabulated(TabulatedStrategy::coordinatewise(&g2, &f, &h).unwrap());
        assert_eq!(evaluate(&g2, &t, EvalMode::Exact).unwrap().exact.unwrap(), two);
        let r2 = evaluate(&g2, &Strategy::Random, EvalMode::Exact).unwrap().exact.unwrap();
        assert_eq!(r2, Ratio::new(1, 4));
    }
}
