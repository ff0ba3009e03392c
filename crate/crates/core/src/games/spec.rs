use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;

use num_rational::Ratio;
use rand::Rng;

use crate::error::{Error, Result};
use crate::lattice::MaximalSystem;

/// Largest number of product rounds iterated by exact evaluation.
pub const MAX_EXACT_ROUNDS: u64 = 1 << 24;

/// Winning condition of one coordinate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WinRule {
    /// Answers must agree on every common direction of the two questions.
    Consistency,
    /// Answers must agree at the secret direction of the round.
    Agreement,
}

/// One question pair of a single-copy game. `w` is the referee's secret
/// direction in the agreement game.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BaseRound {
    pub x: u32,
    pub y: u32,
    pub w: Option<u16>,
}

/// A nonlocal game on the maximal measurements of one system, possibly
/// repeated in parallel.
///
/// The base rounds are equally likely, so the question distribution of a
/// `k`-fold repetition is uniform over `rounds^k`. Round `r` of the product
/// uses base round `(r / R^i) mod R` in coordinate `i`. Answers are outcome
/// indices, one per coordinate.
#[derive(Clone, Debug)]
pub struct GameSpec {
    system: Arc<MaximalSystem>,
    name: String,
    rule: WinRule,
    base: Vec<BaseRound>,
    copies: usize,
    common: Vec<Vec<(u8, u8)>>,
    positions: Vec<Option<(u8, u8)>>,
}

/// The questions and secret of one product round.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Questions {
    pub alice: Vec<u32>,
    pub bob: Vec<u32>,
    pub secret: Vec<Option<u16>>,
}

impl GameSpec {
    fn build(system: Arc<MaximalSystem>, name: &str, rule: WinRule, base: Vec<BaseRound>) -> Result<Self> {
        if base.is_empty() {
            return Err(Error::Empty);
        }
        let mut common = Vec::with_capacity(base.len());
        let mut positions = Vec::with_capacity(base.len());
        for r in &base {
            let mut buf = Vec::new();
            system.common_positions(r.x as usize, r.y as usize, &mut buf);
            common.push(buf);
            positions.push(r.w.map(|w| {
                let px = system.contained(r.x as usize).binary_search(&w).expect("w below x");
                let py = system.contained(r.y as usize).binary_search(&w).expect("w below y");
                (px as u8, py as u8)
            }));
        }
        Ok(Self { system, name: name.to_string(), rule, base, copies: 1, common, positions })
    }

    pub fn system(&self) -> &MaximalSystem {
        &self.system
    }

    pub fn shared_system(&self) -> Arc<MaximalSystem> {
        Arc::clone(&self.system)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn n(&self) -> usize {
        self.system.n()
    }

    pub fn rule(&self) -> WinRule {
        self.rule
    }

    pub fn copies(&self) -> usize {
        self.copies
    }

    pub fn base_rounds(&self) -> &[BaseRound] {
        &self.base
    }

    /// Number of product rounds, `None` past `u64`.
    pub fn round_count(&self) -> Option<u64> {
        (self.base.len() as u64).checked_pow(self.copies as u32)
    }

    /// Probability of each round.
    pub fn round_weight(&self) -> Option<Ratio<u64>> {
        self.round_count().map(|c| Ratio::new(1, c))
    }

    /// Whether exact evaluation may iterate every round.
    pub fn is_exhaustible(&self) -> bool {
        self.round_count().is_some_and(|c| c <= MAX_EXACT_ROUNDS)
    }

    /// Base round index used by coordinate `i` of product round `r`.
    #[inline]
    pub fn coordinate(&self, r: u64, i: usize) -> usize {
        let len = self.base.len() as u64;
        ((r / len.pow(i as u32)) % len) as usize
    }

    pub fn questions(&self, r: u64) -> Questions {
        let mut q = Questions { alice: Vec::new(), bob: Vec::new(), secret: Vec::new() };
        for i in 0..self.copies {
            let b = self.base[self.coordinate(r, i)];
            q.alice.push(b.x);
            q.bob.push(b.y);
            q.secret.push(b.w);
        }
        q
    }

    /// Draws a product round uniformly.
    pub fn sample_round<R: Rng + ?Sized>(&self, rng: &mut R) -> u64 {
        let len = self.base.len() as u64;
        let mut r = 0;
        for _ in 0..self.copies {
            r = r * len + rng.gen_range(0..len);
        }
        r
    }

    /// Whether `answers` is a tuple of outcome indices of the right length.
    pub fn validate_answers(&self, answers: &[u16]) -> bool {
        answers.len() == self.copies && answers.iter().all(|&a| usize::from(a) < self.system.outcome_count())
    }

    /// Win predicate of base round `i` with Alice answering `a`, Bob `b`.
    #[inline]
    pub fn base_wins(&self, i: usize, a: u16, b: u16) -> bool {
        let r = self.base[i];
        let va = self.system.value_bits(r.x as usize, usize::from(a));
        let vb = self.system.value_bits(r.y as usize, usize::from(b));
        match (self.rule, self.positions[i]) {
            (WinRule::Agreement, Some((px, py))) => (va >> px & 1) == (vb >> py & 1),
            _ if r.x == r.y => a == b,
            _ => self.common[i].iter().all(|&(p, q)| (va >> p & 1) == (vb >> q & 1)),
        }
    }

    /// Win predicate of product round `r`: every coordinate is won.
    pub fn wins(&self, r: u64, a: &[u16], b: &[u16]) -> bool {
        (0..self.copies).all(|i| self.base_wins(self.coordinate(r, i), a[i], b[i]))
    }

    /// Positions of the shared directions of base round `i`.
    pub fn common(&self, i: usize) -> &[(u8, u8)] {
        &self.common[i]
    }
}

/// Questions `(x, y) ∈ ℒ²₂ × ℒ²₂` with `dim(x ∩ y) = 1`, answers agreeing
/// on the shared direction.
pub fn game_z1() -> Result<GameSpec> {
    let system = Arc::new(MaximalSystem::new(2)?);
    distance_game(system, 1, "z1")
}

/// Uniform ordered pairs of maximal measurements at distance `n/2`, won by
/// consistent answers.
pub fn game_z_half(n: usize) -> Result<GameSpec> {
    if n % 2 == 1 {
        return Err(Error::OddQubitCount(n));
    }
    if !(2..=4).contains(&n) {
        return Err(Error::Capacity { what: "qubits for the half-distance game", value: n as u64, limit: 4 });
    }
    let system = Arc::new(MaximalSystem::new(n)?);
    distance_game(system, n / 2, "z_half")
}

/// The half-distance game on an existing system.
pub fn game_z_half_on(system: Arc<MaximalSystem>) -> Result<GameSpec> {
    let n = system.n();
    if n % 2 == 1 || n == 0 {
        return Err(Error::OddQubitCount(n));
    }
    distance_game(system, n / 2, "z_half")
}

fn distance_game(system: Arc<MaximalSystem>, d: usize, name: &str) -> Result<GameSpec> {
    let table = system.pairs_at_distance(d)?;
    let base = table.pairs.iter().map(|&(x, y)| BaseRound { x, y, w: None }).collect();
    GameSpec::build(system, name, WinRule::Consistency, base)
}

/// The agreement game: a secret direction `w`, then `x, y ≥ w` independently.
pub fn game_pauli_agreement(n: usize) -> Result<GameSpec> {
    if n > 4 || n == 0 {
        return Err(Error::Capacity { what: "qubits for the agreement game", value: n as u64, limit: 4 });
    }
    game_pauli_agreement_on(Arc::new(MaximalSystem::new(n)?))
}

pub fn game_pauli_agreement_on(system: Arc<MaximalSystem>) -> Result<GameSpec> {
    let mut base = Vec::new();
    for w in 0..system.direction_count() {
        let above = system.above(w);
        for &x in above {
            for &y in above {
                base.push(BaseRound { x, y, w: Some(w as u16) });
            }
        }
    }
    GameSpec::build(system, "agreement", WinRule::Agreement, base)
}

/// `k`-fold parallel repetition: product questions, won on every coordinate.
pub fn game_parallel(game: &GameSpec, k: usize) -> Result<GameSpec> {
    if k == 0 {
        return Err(Error::InvalidArgument("repetition needs k ≥ 1".into()));
    }
    let copies = game.copies.checked_mul(k).ok_or(Error::InvalidArgument("copy count overflow".into()))?;
    if copies * game.n() > 64 {
        return Err(Error::Capacity { what: "answer bits of the repeated game", value: (copies * game.n()) as u64, limit: 64 });
    }
    if game.copies != 1 {
        return Err(Error::Unsupported("repeating an already repeated game".into()));
    }
    let mut g = game.clone();
    g.copies = copies;
    g.name = alloc::format!("{}^{}", game.name, k);
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn z1_shape() {
        let g = game_z1().unwrap();
        assert_eq!(g.round_count(), Some(90));
        assert_eq!(g.round_weight(), Some(Ratio::new(1, 90)));
        for r in g.base_rounds() {
            assert_eq!(g.system().distance(r.x as usize, r.y as usize), 1);
        }
        let h = game_z_half(2).unwrap();
        assert_eq!(h.base_rounds(), g.base_rounds());
        assert!(game_z_half(3).is_err());
    }

    #[test]
    fn agreement_shape() {
        let g = game_pauli_agreement(2).unwrap();
        assert_eq!(g.round_count(), Some(15 * 9));
        let s = g.system();
        for r in g.base_rounds() {
            let w = usize::from(r.w.unwrap());
            assert!(s.value(r.x as usize, 0, w).is_some() && s.value(r.y as usize, 0, w).is_some());
        }
    }

    #[test]
    fn product_indexing() {
        let g = game_parallel(&game_z1().unwrap(), 2).unwrap();
        assert_eq!(g.round_count(), Some(8100));
        let q = g.questions(91);
        assert_eq!(q.alice, alloc::vec![g.base_rounds()[1].x, g.base_rounds()[1].x]);
        assert!(g.validate_answers(&[0, 3]));
        assert!(!g.validate_answers(&[0, 4]));
        assert!(!g.validate_answers(&[0]));
    }

    #[test]
    fn predicate_matches_consistency() {
        let g = game_z1().unwrap();
        let s = g.system();
        for (i, r) in g.base_rounds().iter().enumerate() {
            for a in 0..4 {
                for b in 0..4 {
                    assert_eq!(g.base_wins(i, a, b), s.consistent(r.x as usize, usize::from(a), r.y as usize, usize::from(b)));
                }
            }
        }
    }
}
