use alloc::vec::Vec;

use super::spec::GameSpec;
use crate::error::{Error, Result};
use crate::solvers::ContextualAssignment;

/// Answer rules for the two players.
///
/// `Deterministic` and `Synchronous` act coordinatewise on repeated games.
/// `Tabulated` is an arbitrary deterministic pair for a repeated game, one
/// packed answer tuple per question tuple. `Quantum` is the entangled
/// strategy with an independent shared state per coordinate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Strategy {
    Deterministic { alice: ContextualAssignment, bob: ContextualAssignment },
    Synchronous(ContextualAssignment),
    Tabulated(TabulatedStrategy),
    Quantum,
    Random,
}

impl Strategy {
    pub fn label(&self) -> &'static str {
        match self {
            Strategy::Deterministic { .. } => "deterministic",
            Strategy::Synchronous(_) => "synchronous",
            Strategy::Tabulated(_) => "tabulated",
            Strategy::Quantum => "quantum",
            Strategy::Random => "random",
        }
    }

    /// Whether answers are fixed functions of each player's own question.
    pub fn is_classical(&self) -> bool {
        !matches!(self, Strategy::Quantum | Strategy::Random)
    }

    pub(crate) fn check(&self, game: &GameSpec) -> Result<()> {
        let sys = game.system();
        let fits = |f: &ContextualAssignment| f.len() == sys.len() && f.n() == sys.n();
        let ok = match self {
            Strategy::Deterministic { alice, bob } => fits(alice) && fits(bob),
            Strategy::Synchronous(f) => fits(f),
            Strategy::Tabulated(t) => t.copies == game.copies() && t.questions == sys.len() && t.n == sys.n(),
            Strategy::Quantum | Strategy::Random => true,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidArgument(alloc::format!("{} strategy does not fit game {}", self.label(), game.name())))
        }
    }

    /// Alice's answer tuple, for classical strategies.
    pub fn alice_answers(&self, questions: &[u32]) -> Option<Vec<u16>> {
        match self {
            Strategy::Deterministic { alice, .. } | Strategy::Synchronous(alice) => Some(questions.iter().map(|&x| alice.get(x as usize)).collect()),
            Strategy::Tabulated(t) => Some(t.answers(&t.alice, questions)),
            _ => None,
        }
    }

    /// Bob's answer tuple, for classical strategies.
    pub fn bob_answers(&self, questions: &[u32]) -> Option<Vec<u16>> {
        match self {
            Strategy::Deterministic { bob, .. } | Strategy::Synchronous(bob) => Some(questions.iter().map(|&y| bob.get(y as usize)).collect()),
            Strategy::Tabulated(t) => Some(t.answers(&t.bob, questions)),
            _ => None,
        }
    }
}

/// Deterministic answer tables indexed by question tuples
/// `Σ qᵢ·Lⁱ` (`L` measurements per coordinate). Entries pack one outcome
/// index per coordinate into `n` bits each.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TabulatedStrategy {
    n: usize,
    copies: usize,
    questions: usize,
    pub alice: Vec<u64>,
    pub bob: Vec<u64>,
}

impl TabulatedStrategy {
    pub fn new(game: &GameSpec, alice: Vec<u64>, bob: Vec<u64>) -> Result<Self> {
        let sys = game.system();
        let size = table_size(game)?;
        let limit = 1u128 << (sys.n() * game.copies());
        if alice.len() != size || bob.len() != size {
            return Err(Error::DimensionMismatch { left: alice.len().max(bob.len()), right: size });
        }
        if alice.iter().chain(&bob).any(|&a| u128::from(a) >= limit) {
            return Err(Error::InvalidArgument("packed answer out of range".into()));
        }
        Ok(Self { n: sys.n(), copies: game.copies(), questions: sys.len(), alice, bob })
    }

    /// Lifts a coordinatewise pair of assignments.
    pub fn coordinatewise(game: &GameSpec, alice: &ContextualAssignment, bob: &ContextualAssignment) -> Result<Self> {
        let size = table_size(game)?;
        let l = game.system().len();
        let n = game.n();
        let lift = |f: &ContextualAssignment| -> Vec<u64> {
            (0..size)
                .map(|idx| {
                    let mut rest = idx;
                    let mut packed = 0u64;
                    for i in 0..game.copies() {
                        packed |= u64::from(f.get(rest % l)) << (n * i);
                        rest /= l;
                    }
                    packed
                })
                .collect()
        };
        Self::new(game, lift(alice), lift(bob))
    }

    pub fn index(&self, questions: &[u32]) -> usize {
        questions.iter().rev().fold(0usize, |acc, &q| acc * self.questions + q as usize)
    }

    pub fn unpack(&self, packed: u64) -> Vec<u16> {
        let mask = (1u64 << self.n) - 1;
        (0..self.copies).map(|i| (packed >> (self.n * i) & mask) as u16).collect()
    }

    fn answers(&self, table: &[u64], questions: &[u32]) -> Vec<u16> {
        self.unpack(table[self.index(questions)])
    }
}

/// Number of question tuples of one player.
pub(crate) fn table_size(game: &GameSpec) -> Result<usize> {
    const LIMIT: usize = 1 << 22;
    let l = game.system().len();
    let mut size = 1usize;
    for _ in 0..game.copies() {
        size = size.checked_mul(l).filter(|&s| s <= LIMIT).ok_or(Error::Capacity {
            what: "question tuples of a tabulated strategy",
            value: (l as u64).saturating_pow(game.copies() as u32),
            limit: LIMIT as u64,
        })?;
    }
    Ok(size)
}
