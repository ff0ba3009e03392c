use alloc::vec;
use alloc::vec::Vec;

use num_rational::Ratio;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::spec::{GameSpec, WinRule};
use crate::error::{Error, Result};
use crate::solvers::ContextualAssignment;
use crate::stats::{chi_square_critical, chi_square_statistic, Z_999_ONE_SIDED};
#[allow(unused_imports)]
use num_traits::Float;

/// `Val_loc ≤ 1 − ε/2` from `1 − Val_syn ≥ ε`.
pub fn syn_to_loc_bound(eps: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&eps) {
        return Err(Error::InvalidArgument(alloc::format!("ε = {eps} outside [0, 1]")));
    }
    Ok(1.0 - eps / 2.0)
}

/// One run of the referee protocol: a direction `w`, Bob's `b ≥ w`, then
/// distinct `a, a′ ≥ w` different from `b`, and a coin choosing which one
/// Alice is asked.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ProtocolDraw {
    pub w: u16,
    pub b: u32,
    pub a: u32,
    pub a_prime: u32,
    pub alice_gets_prime: bool,
}

impl ProtocolDraw {
    pub fn alice(&self) -> u32 {
        if self.alice_gets_prime {
            self.a_prime
        } else {
            self.a
        }
    }
}

fn check_z1(game: &GameSpec) -> Result<()> {
    if game.n() != 2 || game.copies() != 1 || game.rule() != WinRule::Consistency || game.round_count() != Some(90) {
        return Err(Error::Unsupported("the referee protocol refers the two-qubit game".into()));
    }
    Ok(())
}

pub fn referee_draw<R: Rng + ?Sized>(game: &GameSpec, rng: &mut R) -> ProtocolDraw {
    let sys = game.system();
    let w = rng.gen_range(0..sys.direction_count());
    let above = sys.above(w);
    let b = *above.choose(rng).expect("directions lie below some measurement");
    let rest: Vec<u32> = above.iter().copied().filter(|&m| m != b).collect();
    let a = *rest.choose(rng).expect("three measurements above w");
    let last: Vec<u32> = rest.iter().copied().filter(|&m| m != a).collect();
    let a_prime = *last.choose(rng).expect("three measurements above w");
    ProtocolDraw { w: w as u16, b, a, a_prime, alice_gets_prime: rng.gen() }
}

/// χ² comparison of protocol marginals with the uniform distribution on
/// the game's question pairs.
#[derive(Clone, Debug, PartialEq)]
pub struct MarginalTest {
    pub samples: u64,
    pub seed: u64,
    pub dof: usize,
    /// Statistics for `(a, b)`, `(a′, b)` and the pair actually asked.
    pub statistics: [f64; 3],
    /// Upper 0.1% point of χ² with `dof` degrees of freedom.
    pub critical: f64,
    pub pass: bool,
}

pub fn protocol_marginals(game: &GameSpec, samples: u64, seed: u64) -> Result<MarginalTest> {
    check_z1(game)?;
    if samples == 0 {
        return Err(Error::InvalidArgument("marginal test needs samples".into()));
    }
    let k = game.base_rounds().len();
    let l = game.system().len();
    let mut lookup = vec![usize::MAX; l * l];
    for (i, r) in game.base_rounds().iter().enumerate() {
        lookup[r.x as usize * l + r.y as usize] = i;
    }
    let at = |x: u32, y: u32| {
        let i = lookup[x as usize * l + y as usize];
        assert!(i != usize::MAX, "protocol questions lie in the game");
        i
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut counts = [vec![0u64; k], vec![0u64; k], vec![0u64; k]];
    for _ in 0..samples {
        let d = referee_draw(game, &mut rng);
        counts[0][at(d.a, d.b)] += 1;
        counts[1][at(d.a_prime, d.b)] += 1;
        counts[2][at(d.alice(), d.b)] += 1;
    }
    let expected = vec![samples as f64 / k as f64; k];
    let statistics = [0, 1, 2].map(|i| chi_square_statistic(&counts[i], &expected));
    let dof = k - 1;
    let critical = chi_square_critical(dof as f64, Z_999_ONE_SIDED);
    let pass = statistics.iter().all(|&s| s <= critical);
    Ok(MarginalTest { samples, seed, dof, statistics, critical, pass })
}

/// Exact analysis of the protocol for a deterministic pair, over all 180
/// equally likely draws.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProtocolCheck {
    /// Probability that Bob's answer is inconsistent with Alice's.
    pub loss: Ratio<u64>,
    /// Probability that Alice's answers to `a` and `a′` differ at `w`.
    pub self_disagreement: Ratio<u64>,
    /// `loss ≥ self_disagreement / 2`.
    pub holds: bool,
}

pub fn protocol_check(game: &GameSpec, alice: &ContextualAssignment, bob: &ContextualAssignment) -> Result<ProtocolCheck> {
    check_z1(game)?;
    let sys = game.system();
    let (mut draws, mut lost, mut split) = (0u64, 0u64, 0u64);
    for w in 0..sys.direction_count() {
        let above = sys.above(w);
        for &b in above {
            for &a in above.iter().filter(|&&m| m != b) {
                for &ap in above.iter().filter(|&&m| m != b && m != a) {
                    let va = sys.value(a as usize, usize::from(alice.get(a as usize)), w).expect("w ≤ a");
                    let vp = sys.value(ap as usize, usize::from(alice.get(ap as usize)), w).expect("w ≤ a′");
                    let vb = sys.value(b as usize, usize::from(bob.get(b as usize)), w).expect("w ≤ b");
                    for asked in [va, vp] {
                        draws += 1;
                        lost += u64::from(asked != vb);
                        split += u64::from(va != vp);
                    }
                }
            }
        }
    }
    let loss = Ratio::new(lost, draws);
    let self_disagreement = Ratio::new(split, draws);
    Ok(ProtocolCheck { loss, self_disagreement, holds: loss * 2 >= self_disagreement })
}

/// `(1 − (1 − v)³/6000)^{k / log₂(|A||B|)}`.
pub fn parallel_repetition_bound(val_loc: f64, k: usize, answer_pairs: u64) -> Result<f64> {
    if !(0.0..1.0).contains(&val_loc) {
        return Err(Error::InvalidArgument(alloc::format!("value {val_loc} outside [0, 1)")));
    }
    if answer_pairs < 2 || k == 0 {
        return Err(Error::InvalidArgument("need k ≥ 1 and at least two answer pairs".into()));
    }
    let gap = (1.0 - val_loc).powi(3) / 6000.0;
    Ok((1.0 - gap).powf(k as f64 / (answer_pairs as f64).log2()))
}

/// The repetition bound for `n/2` copies of the two-qubit game, from `ε`.
#[derive(Clone, Debug, PartialEq)]
pub struct RepetitionChain {
    pub eps: f64,
    pub n: usize,
    pub copies: usize,
    pub val_loc_upper: f64,
    /// The general bound evaluated at `val_loc_upper`.
    pub lemma: f64,
    /// `(1 − ε³/(2³·6000))^{n/8}`.
    pub closed: f64,
    pub agree: bool,
}

pub fn repetition_chain(eps: f64, n: usize) -> Result<RepetitionChain> {
    if n == 0 || n % 2 == 1 {
        return Err(Error::OddQubitCount(n));
    }
    if !(0.0 < eps && eps <= 1.0) {
        return Err(Error::InvalidArgument(alloc::format!("ε = {eps} outside (0, 1]")));
    }
    let v = syn_to_loc_bound(eps)?;
    let lemma = parallel_repetition_bound(v, n / 2, 16)?;
    let closed = (1.0 - eps.powi(3) / (8.0 * 6000.0)).powf(n as f64 / 8.0);
    let agree = (lemma - closed).abs() <= 1e-12;
    Ok(RepetitionChain { eps, n, copies: n / 2, val_loc_upper: v, lemma, closed, agree })
}

#[cfg(test)]
mod tests {
    use super::super::spec::game_z1;
    use super::*;

    #[test]
    fn syn_to_loc() {
        assert_eq!(syn_to_loc_bound(0.0).unwrap(), 1.0);
        assert_eq!(syn_to_loc_bound(0.5).unwrap(), 0.75);
        assert!(syn_to_loc_bound(1.5).is_err());
    }

    #[test]
    fn marginals_uniform() {
        let g = game_z1().unwrap();
        let t = protocol_marginals(&g, 200_000, 1).unwrap();
        assert_eq!(t.dof, 89);
        assert!(t.pass, "{t:?}");
    }

    #[test]
    fn protocol_loss_matches_game() {
        use super::super::evaluate::{evaluate, EvalMode};
        use super::super::strategy::Strategy;
        let g = game_z1().unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..20 {
            let f = ContextualAssignment::random(g.system(), &mut rng);
            let h = ContextualAssignment::random(g.system(), &mut rng);
            let c = protocol_check(&g, &f, &h).unwrap();
            assert!(c.holds);
            let v = evaluate(&g, &Strategy::Deterministic { alice: f.clone(), bob: h }, EvalMode::Exact).unwrap().exact.unwrap();
            assert_eq!(u128::from(*c.loss.numer()) * *v.denom(), (*v.denom() - *v.numer()) * u128::from(*c.loss.denom()));
            let s = evaluate(&g, &Strategy::Synchronous(f), EvalMode::Exact).unwrap().exact.unwrap();
            assert_eq!(u128::from(*c.self_disagreement.numer()) * *s.denom(), (*s.denom() - *s.numer()) * u128::from(*c.self_disagreement.denom()));
        }
    }

    #[test]
    fn repetition_bounds() {
        assert!(parallel_repetition_bound(1.0, 1, 16).is_err());
        let mut prev = 1.0;
        for k in 1..10 {
            let b = parallel_repetition_bound(0.9, k, 16).unwrap();
            assert!(b < prev);
            prev = b;
        }
        for i in 0..20 {
            let v = i as f64 / 20.0;
            for k in 1..6 {
                assert!(parallel_repetition_bound(v, k, 16).unwrap() >= v.powi(k as i32));
            }
        }
        let c = repetition_chain(1.0 / 45.0, 4).unwrap();
        assert!(c.agree);
        assert_eq!(c.copies, 2);
    }
}
