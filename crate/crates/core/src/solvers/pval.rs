use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::ToString;
use alloc::vec::Vec;

use num_rational::Ratio;

use super::assignment::{Certificate, PartialAssignment, SolveReport};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::mis::{
    greedy_independent_set, is_independent_set, local_search, maximum_independent_set, maximum_independent_set_from, MisResult,
};
use crate::error::{Error, Result};
use crate::gf2::{enumerate_isotropic, isotropic_subspaces_of, GF2Vector, IsotropicSubspace, Subspace};
use crate::graphs::{build_sn, LabeledGraph};
use crate::lattice::{outcomes, MaximalSystem, Outcome};

/// Local-search rounds used to seed the exact search.
pub const SEED_ROUNDS: usize = 200;

/// `Pval(ℒⁿ) = α(S_n)/|ℒⁿ_n|` by exact search on `S_n`, seeded with a
/// local-search incumbent. When the search does not close, the upper
/// bound is tightened by [`fiber_averaging`].
pub fn pval_exact(system: &MaximalSystem, budget: u64) -> Result<SolveReport> {
    let g = build_sn(system)?;
    let mut rng = ChaCha8Rng::seed_from_u64(crate::DEFAULT_SEED);
    let start = local_search(&g, &greedy_independent_set(&g), SEED_ROUNDS, &mut rng);
    let mis = maximum_independent_set_from(&g, budget, &start);
    let f = PartialAssignment::from_vertices(system, &mis.best)?;
    if !is_independent_set(&g, &mis.best) || !f.validate(system) {
        return Err(Error::InvalidArgument("solver certificate failed re-validation".into()));
    }
    let total = system.len() as u64;
    let mut upper = mis.upper as u64;
    let mut closed = mis.closed;
    let mut nodes = mis.nodes;
    if !closed {
        let fib = fiber_averaging(system, &g, budget)?;
        nodes += fib.nodes;
        upper = upper.min(fib.alpha_upper as u64);
        closed = upper == mis.lower as u64;
    }
    Ok(SolveReport {
        problem: "pval".to_string(),
        n: system.n(),
        lower: Ratio::new(mis.lower as u64, total),
        upper: Ratio::new(upper, total),
        certificate: Certificate::Partial(f),
        nodes,
        proof_closed: closed,
    })
}

/// Upper bound on `α(S_n)` by double counting over directions.
///
/// Every maximal measurement contains `2ⁿ − 1` directions. If `D` is
/// independent and `F_w` is the set of outcomes of measurements above `w`,
/// then `(2ⁿ − 1)|D| = Σ_w |D ∩ F_w| ≤ Σ_w α(S_n[F_w])`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberAveraging {
    pub directions: usize,
    /// Proven `α` of each fiber (upper bounds when a search did not close).
    pub fiber_alpha: Vec<usize>,
    pub closed: bool,
    pub alpha_upper: usize,
    pub nodes: u64,
}

pub fn fiber_averaging<P>(system: &MaximalSystem, g: &LabeledGraph<P>, budget: u64) -> Result<FiberAveraging> {
    let per = system.outcome_count() as u32;
    if g.order() != system.len() * per as usize {
        return Err(Error::DimensionMismatch { left: g.order(), right: system.len() * per as usize });
    }
    let mut fiber_alpha = Vec::with_capacity(system.direction_count());
    let (mut closed, mut nodes) = (true, 0);
    for d in 0..system.direction_count() {
        let verts: Vec<u32> = system.above(d).iter().flat_map(|&x| (0..per).map(move |o| x * per + o)).collect();
        let sub = LabeledGraph::from_predicate(verts, |&a, &b| g.has_edge(a as usize, b as usize));
        let r = maximum_independent_set(&sub, budget);
        closed &= r.closed;
        nodes += r.nodes;
        fiber_alpha.push(r.upper);
    }
    let containing = (1usize << system.n()) - 1;
    let alpha_upper = fiber_alpha.iter().sum::<usize>() / containing;
    Ok(FiberAveraging { directions: system.direction_count(), fiber_alpha, closed, alpha_upper, nodes })
}

/// Machine check that no assignment is both complete and consistent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompletenessReport {
    pub n: usize,
    pub measurements: usize,
    /// Proven `α(S_n)`, or its upper bound.
    pub alpha_upper: usize,
    /// Search closed, so no independent set of size `alpha_upper + 1` exists.
    pub closed: bool,
    /// A complete consistent assignment was ruled out.
    pub unsat: bool,
    /// True for `n = 1`, where every complete assignment is consistent.
    pub vacuous: bool,
}

/// At `n = 1` distinct maximal measurements meet trivially, so every
/// complete assignment is consistent. At `n = 2` the exhaustive search
/// shows `α(S₂) < |ℒ²₂|`. For larger `n`, restricting a complete consistent
/// assignment of `ℒⁿ` to the measurements `m ⊕ c` (with `c` a fixed maximal
/// measurement on the remaining `n − 2` qubits and `m ∈ ℒ²₂`) would give one
/// for `ℒ²`, so the `n = 2` result covers every `n ≥ 2`.
pub fn no_complete_consistent(n: usize, budget: u64) -> Result<CompletenessReport> {
    if n == 0 {
        return Err(Error::InvalidQubitCount(0));
    }
    let base = n.min(2);
    let system = MaximalSystem::new(base)?;
    let g = build_sn(&system)?;
    let mis = maximum_independent_set(&g, budget);
    let vacuous = base == 1;
    let unsat = !vacuous && mis.upper < system.len();
    Ok(CompletenessReport { n, measurements: system.len(), alpha_upper: mis.upper, closed: mis.closed, unsat, vacuous })
}

/// The scenario whose measurements are `ℒⁿ_2`: vertices are pairs
/// (subspace index, outcome index), joined when inconsistent.
pub struct LevelTwo {
    pub n: usize,
    pub subspaces: Vec<IsotropicSubspace>,
    pub outcomes: Vec<Outcome>,
    pub graph: LabeledGraph<u32>,
}

impl LevelTwo {
    pub fn new(n: usize) -> Result<Self> {
        if !(2..=3).contains(&n) {
            return Err(Error::Capacity { what: "qubits for the level-two scenario", value: n as u64, limit: 3 });
        }
        let subspaces = enumerate_isotropic(n, 2)?;
        let mut outs = Vec::with_capacity(subspaces.len() * 4);
        for s in &subspaces {
            outs.extend(outcomes(s)?);
        }
        let mut meets: BTreeMap<(usize, usize), bool> = BTreeMap::new();
        for i in 0..subspaces.len() {
            for j in i + 1..subspaces.len() {
                meets.insert((i, j), !subspaces[i].intersect(&subspaces[j])?.is_zero());
            }
        }
        let ids: Vec<u32> = (0..outs.len() as u32).collect();
        let graph = LabeledGraph::from_predicate(ids, |&a, &b| {
            let (i, j) = (a as usize / 4, b as usize / 4);
            if i == j {
                return true;
            }
            meets[&(i.min(j), i.max(j))] && !outs[a as usize].consistent(&outs[b as usize]).unwrap_or(false)
        });
        Ok(Self { n, subspaces, outcomes: outs, graph })
    }

    pub fn index_of(&self, s: &IsotropicSubspace) -> Option<usize> {
        self.subspaces.binary_search(s).ok()
    }
}

/// Nondegenerate four-dimensional subspaces `span{a, b}^⊥` with `⟨a, b⟩ = 1`,
/// sorted; each is a symplectic copy of the two-qubit space.
pub fn square_subspaces(n: usize) -> Result<Vec<Subspace>> {
    if !(2..=3).contains(&n) {
        return Err(Error::Capacity { what: "qubits for square subspaces", value: n as u64, limit: 3 });
    }
    let all: Vec<GF2Vector> = GF2Vector::all(n)?.filter(|v| !v.is_zero()).collect();
    let mut out = BTreeSet::new();
    for (i, a) in all.iter().enumerate() {
        for b in &all[i + 1..] {
            if a.symplectic_unchecked(b) {
                out.insert(Subspace::span(n, [*a, *b])?.perp());
            }
        }
    }
    Ok(out.into_iter().collect())
}

/// Upper bound on `Pval(ℒⁿ_2)` from averaging over square subspaces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquareAveraging {
    pub squares: usize,
    /// Number of squares containing each two-dimensional subspace, if constant.
    pub per_subspace: Option<usize>,
    /// `α` of the induced 60-vertex graph for each square, if all equal.
    pub alpha_each: Option<usize>,
    pub closed: bool,
    /// `⌊Σ α_W / per_subspace⌋ / |ℒⁿ_2|`.
    pub upper: Ratio<u64>,
}

pub fn square_averaging(level: &LevelTwo, budget: u64) -> Result<SquareAveraging> {
    let squares = square_subspaces(level.n)?;
    let mut count = alloc::vec![0usize; level.subspaces.len()];
    let mut alphas = Vec::with_capacity(squares.len());
    let mut closed = true;
    for w in &squares {
        let inside = isotropic_subspaces_of(w, 2)?;
        let idx: Vec<usize> = inside.iter().map(|s| level.index_of(s).ok_or(Error::NotBelow)).collect::<Result<_>>()?;
        for &i in &idx {
            count[i] += 1;
        }
        let verts: Vec<u32> = idx.iter().flat_map(|&i| (0..4u32).map(move |o| i as u32 * 4 + o)).collect();
        let sub = LabeledGraph::from_predicate(verts.clone(), |&a, &b| level.graph.has_edge(a as usize, b as usize));
        let r: MisResult = maximum_independent_set(&sub, budget);
        closed &= r.closed;
        alphas.push(r.upper);
    }
    let per_subspace = count.iter().all(|&c| c == count[0]).then_some(count[0]);
    let alpha_each = alphas.iter().all(|&a| a == alphas[0]).then(|| alphas[0]);
    let per = per_subspace.ok_or(Error::Irregular)?;
    let total: usize = alphas.iter().sum();
    Ok(SquareAveraging {
        squares: squares.len(),
        per_subspace,
        alpha_each,
        closed,
        upper: Ratio::new((total / per) as u64, level.subspaces.len() as u64),
    })
}

/// `Pval` of the level-two scenario: exact at `n = 2`, and at `n = 3` the
/// square-averaging upper bound with a searched lower bound.
pub fn pval_level2(n: usize, budget: u64) -> Result<(SolveReport, Option<SquareAveraging>)> {
    let level = LevelTwo::new(n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(crate::DEFAULT_SEED);
    let start = local_search(&level.graph, &greedy_independent_set(&level.graph), SEED_ROUNDS, &mut rng);
    let mis = maximum_independent_set_from(&level.graph, budget, &start);
    if !is_independent_set(&level.graph, &mis.best) {
        return Err(Error::InvalidArgument("level-two certificate failed re-validation".into()));
    }
    let total = level.subspaces.len() as u64;
    let (upper, avg) = if n == 3 {
        let a = square_averaging(&level, budget)?;
        (a.upper.min(Ratio::new(mis.upper as u64, total)), Some(a))
    } else {
        (Ratio::new(mis.upper as u64, total), None)
    };
    let report = SolveReport {
        problem: "pval_level2".to_string(),
        n,
        lower: Ratio::new(mis.lower as u64, total),
        upper,
        certificate: Certificate::IndependentSet(mis.best),
        nodes: mis.nodes,
        proof_closed: mis.closed || upper == Ratio::new(mis.lower as u64, total),
    };
    Ok((report, avg))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_qubits() {
        let sys = MaximalSystem::new(2).unwrap();
        let r = pval_exact(&sys, u64::MAX).unwrap();
        assert_eq!(r.optimum(), Some(Ratio::new(4, 5)));
        let one = pval_exact(&MaximalSystem::new(1).unwrap(), u64::MAX).unwrap();
        assert_eq!(one.optimum(), Some(Ratio::from_integer(1)));
    }

    #[test]
    fn completeness() {
        let r = no_complete_consistent(2, u64::MAX).unwrap();
        assert!(r.unsat && r.closed && r.alpha_upper == 12);
        assert!(no_complete_consistent(1, u64::MAX).unwrap().vacuous);
    }

    #[test]
    fn squares_three_qubits() {
        let sq = square_subspaces(3).unwrap();
        assert_eq!(sq.len(), 336);
        assert!(sq.iter().all(|w| w.dim() == 4));
        assert_eq!(square_subspaces(2).unwrap().len(), 20);
    }
}
