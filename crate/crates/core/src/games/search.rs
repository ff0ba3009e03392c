use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

use num_rational::Ratio;
use rand::Rng;

use super::evaluate::{evaluate, EvalMode};
use super::spec::{GameSpec, WinRule};
use super::strategy::{table_size, Strategy, TabulatedStrategy};
use crate::error::{Error, Result};
use crate::solvers::{cval_exact, no_complete_consistent, Certificate, ContextualAssignment, SolveReport};

/// Synchronous value search result.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SynReport {
    /// Bounds on `Val_syn` with the best assignment found.
    pub report: SolveReport,
    /// Ordered question pairs lost by the certificate (consistency games).
    pub lost_rounds: Option<u64>,
    pub rounds: u64,
    /// `Val_syn < 1` is proven.
    pub below_one: bool,
}

/// `Val_syn` of a two-qubit single-copy game.
///
/// Consistency games are solved by branch and bound on the number of lost
/// unordered pairs. The first question is fixed to outcome 0, which loses
/// nothing: adding a character `v ↦ ⟨p, v⟩` to every answer maps
/// consistent pairs to consistent pairs and reaches every outcome of one
/// measurement. Independently of the search, a perfect synchronous strategy
/// would be a complete consistent assignment, so the completeness check
/// alone gives `Val_syn < 1`; each contradicted direction loses at least
/// two unordered pairs.
///
/// For the agreement game a synchronous strategy wins with probability
/// `E_w[m_w² + (1 − m_w)²] = 1 − 2·Cval(f)`, so the value comes from exact Cval.
pub fn val_syn_search(game: &GameSpec, budget: u64) -> Result<SynReport> {
    if game.n() != 2 || game.copies() != 1 {
        return Err(Error::Unsupported("synchronous search needs a single-copy two-qubit game".into()));
    }
    match game.rule() {
        WinRule::Consistency => consistency_search(game, budget),
        WinRule::Agreement => agreement_search(game, budget),
    }
}

fn agreement_search(game: &GameSpec, budget: u64) -> Result<SynReport> {
    let sys = game.system();
    let c = cval_exact(sys, budget, None)?;
    let one = Ratio::from_integer(1u64);
    let two = Ratio::from_integer(2u64);
    let f = match &c.certificate {
        Certificate::Contextual(f) => f.clone(),
        _ => return Err(Error::InvalidArgument("Cval search returned no assignment".into())),
    };
    let check = evaluate(game, &Strategy::Synchronous(f.clone()), EvalMode::Exact)?.exact.expect("classical");
    let lower = one - two * c.upper;
    if Ratio::new(u128::from(*lower.numer()), u128::from(*lower.denom())) != check {
        return Err(Error::InvalidArgument("agreement value disagrees with 1 − 2·Cval".into()));
    }
    let upper = one - two * c.lower;
    let below_one = upper < one;
    Ok(SynReport {
        report: SolveReport {
            problem: "val_syn(agreement)".to_string(),
            n: 2,
            lower,
            upper,
            certificate: Certificate::Contextual(f),
            nodes: c.nodes,
            proof_closed: c.proof_closed,
        },
        lost_rounds: None,
        rounds: game.round_count().unwrap_or(0),
        below_one,
    })
}

struct Search<'a> {
    vars: usize,
    dom: usize,
    order: Vec<usize>,
    /// `nbrs[u]`: `(v, conflict mask index)` for every unordered pair.
    nbrs: Vec<Vec<(usize, usize)>>,
    /// `conflict[e][a * dom + b]` for pair `e = (u, v)`, `u < v`.
    conflict: &'a [Vec<bool>],
    edge_ends: &'a [(usize, usize)],
    value: Vec<Option<usize>>,
    cnt: Vec<Vec<u32>>,
    best: Vec<usize>,
    best_cost: u32,
    nodes: u64,
    budget: u64,
    aborted: bool,
}

impl Search<'_> {
    fn pair_conflict(&self, e: usize, u: usize, a: usize, b: usize) -> bool {
        let (p, _) = self.edge_ends[e];
        if p == u {
            self.conflict[e][a * self.dom + b]
        } else {
            self.conflict[e][b * self.dom + a]
        }
    }

    fn bound(&self, depth: usize) -> u32 {
        self.order[depth..].iter().map(|&u| *self.cnt[u].iter().min().expect("nonempty domain")).sum()
    }

    fn set(&mut self, u: usize, a: usize, sign: i32) {
        for i in 0..self.nbrs[u].len() {
            let (v, e) = self.nbrs[u][i];
            if self.value[v].is_some() {
                continue;
            }
            for b in 0..self.dom {
                if self.pair_conflict(e, u, a, b) {
                    self.cnt[v][b] = (self.cnt[v][b] as i32 + sign) as u32;
                }
            }
        }
    }

    fn go(&mut self, depth: usize, cost: u32) {
        if self.aborted {
            return;
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            self.aborted = true;
            return;
        }
        if depth == self.vars {
            if cost < self.best_cost {
                self.best_cost = cost;
                self.best = self.value.iter().map(|v| v.expect("all assigned")).collect();
            }
            return;
        }
        if cost + self.bound(depth) >= self.best_cost {
            return;
        }
        let u = self.order[depth];
        let range = if depth == 0 { 1 } else { self.dom };
        let mut cand: Vec<(u32, usize)> = (0..range).map(|a| (self.cnt[u][a], a)).collect();
        cand.sort_unstable();
        for (added, a) in cand {
            if cost + added >= self.best_cost {
                break;
            }
            self.value[u] = Some(a);
            self.set(u, a, 1);
            self.go(depth + 1, cost + added);
            self.set(u, a, -1);
            self.value[u] = None;
        }
    }
}

fn consistency_search(game: &GameSpec, budget: u64) -> Result<SynReport> {
    let sys = game.system();
    let vars = sys.len();
    let dom = sys.outcome_count();
    let mut edge_ends = Vec::new();
    let mut conflict = Vec::new();
    let mut nbrs = vec![Vec::new(); vars];
    for (i, r) in game.base_rounds().iter().enumerate() {
        let (u, v) = (r.x as usize, r.y as usize);
        if u >= v {
            continue;
        }
        let e = edge_ends.len();
        edge_ends.push((u, v));
        conflict.push((0..dom * dom).map(|ab| !game.base_wins(i, (ab / dom) as u16, (ab % dom) as u16)).collect());
        nbrs[u].push((v, e));
        nbrs[v].push((u, e));
    }
    let mut order = vec![0usize];
    let mut placed = vec![false; vars];
    placed[0] = true;
    while order.len() < vars {
        let next = (0..vars)
            .filter(|&u| !placed[u])
            .max_by_key(|&u| (nbrs[u].iter().filter(|(v, _)| placed[*v]).count(), core::cmp::Reverse(u)))
            .expect("unplaced variable");
        placed[next] = true;
        order.push(next);
    }
    let mut s = Search {
        vars,
        dom,
        order,
        nbrs,
        conflict: &conflict,
        edge_ends: &edge_ends,
        value: vec![None; vars],
        cnt: vec![vec![0; dom]; vars],
        best: vec![0; vars],
        best_cost: u32::MAX,
        nodes: 0,
        budget: budget.max(1),
        aborted: false,
    };
    let root = s.bound(0);
    s.go(0, 0);
    let completeness = no_complete_consistent(2, budget)?;
    let pairs = edge_ends.len() as u64;
    let rounds = game.round_count().unwrap_or(0);
    let (f, lost) = if s.best_cost == u32::MAX {
        (ContextualAssignment::constant(sys, 0)?, None)
    } else {
        (ContextualAssignment::new(sys, s.best.iter().map(|&o| o as u16).collect())?, Some(u64::from(s.best_cost)))
    };
    let check = evaluate(game, &Strategy::Synchronous(f.clone()), EvalMode::Exact)?.exact.expect("classical");
    let lost_ordered = (*check.denom() - *check.numer()) * (u128::from(rounds) / *check.denom());
    if let Some(l) = lost {
        if u128::from(2 * l) != lost_ordered {
            return Err(Error::InvalidArgument("synchronous certificate failed re-evaluation".into()));
        }
    }
    let min_forced = if completeness.unsat { 2 } else { 0 };
    let cost_lower = if s.aborted { u64::from(root).max(min_forced) } else { u64::from(s.best_cost) };
    let lower = Ratio::new(rounds - lost_ordered as u64, rounds);
    let upper = Ratio::new(pairs - cost_lower.max(min_forced), pairs);
    Ok(SynReport {
        report: SolveReport {
            problem: alloc::format!("val_syn({})", game.name()),
            n: 2,
            lower,
            upper,
            certificate: Certificate::Contextual(f),
            nodes: s.nodes,
            proof_closed: !s.aborted,
        },
        lost_rounds: Some(lost_ordered as u64),
        rounds,
        below_one: upper < Ratio::from_integer(1),
    })
}

/// Best deterministic strategy found by alternating exact best responses.
#[derive(Clone, Debug, PartialEq)]
pub struct BestResponse {
    pub strategy: Strategy,
    pub value: Ratio<u128>,
    pub restarts: usize,
    pub iterations: usize,
}

/// Alternating best responses from `start` and from `restarts` random
/// tables. Each player's answer to each question tuple is optimized
/// exactly against the other's fixed table, so the value never decreases.
/// The result is a lower bound on `Val_loc`.
pub fn best_response_search<R: Rng + ?Sized>(game: &GameSpec, start: Option<&Strategy>, restarts: usize, rng: &mut R) -> Result<BestResponse> {
    let size = table_size(game)?;
    let total = game.round_count().filter(|_| game.is_exhaustible()).ok_or(Error::Capacity {
        what: "rounds for best-response search",
        value: game.round_count().unwrap_or(u64::MAX),
        limit: super::spec::MAX_EXACT_ROUNDS,
    })?;
    let answers = 1u64 << (game.n() * game.copies());
    if answers > 1 << 12 {
        return Err(Error::Capacity { what: "answer tuples per question", value: answers, limit: 1 << 12 });
    }
    let l = game.system().len();
    let questions: Vec<(u32, u32)> = (0..total)
        .map(|r| {
            let q = game.questions(r);
            let idx = |v: &[u32]| v.iter().rev().fold(0usize, |acc, &x| acc * l + x as usize) as u32;
            (idx(&q.alice), idx(&q.bob))
        })
        .collect();
    let mut starts: Vec<TabulatedStrategy> = Vec::new();
    if let Some(s) = start {
        s.check(game)?;
        starts.push(match s {
            Strategy::Tabulated(t) => t.clone(),
            Strategy::Deterministic { alice, bob } => TabulatedStrategy::coordinatewise(game, alice, bob)?,
            Strategy::Synchronous(f) => TabulatedStrategy::coordinatewise(game, f, f)?,
            _ => return Err(Error::InvalidArgument("best response starts from a classical strategy".into())),
        });
    }
    for _ in 0..restarts {
        let a = (0..size).map(|_| rng.gen_range(0..answers)).collect();
        let b = (0..size).map(|_| rng.gen_range(0..answers)).collect();
        starts.push(TabulatedStrategy::new(game, a, b)?);
    }
    if starts.is_empty() {
        return Err(Error::Empty);
    }
    let mut best: Option<(TabulatedStrategy, u64)> = None;
    let mut iterations = 0;
    for mut t in starts {
        let mut wins = count_wins(game, &questions, &t);
        loop {
            iterations += 1;
            improve(game, &questions, &mut t, answers, true);
            improve(game, &questions, &mut t, answers, false);
            let w = count_wins(game, &questions, &t);
            debug_assert!(w >= wins);
            if w <= wins {
                break;
            }
            wins = w;
        }
        if best.as_ref().is_none_or(|(_, b)| wins > *b) {
            best = Some((t, wins));
        }
    }
    let (t, wins) = best.expect("at least one start");
    let value = Ratio::new(u128::from(wins), u128::from(total));
    let strategy = if game.copies() == 1 {
        let sys = game.system();
        let f = ContextualAssignment::new(sys, t.alice.iter().map(|&a| a as u16).collect())?;
        let g = ContextualAssignment::new(sys, t.bob.iter().map(|&b| b as u16).collect())?;
        Strategy::Deterministic { alice: f, bob: g }
    } else {
        Strategy::Tabulated(t)
    };
    Ok(BestResponse { strategy, value, restarts, iterations })
}

fn wins_packed(game: &GameSpec, r: u64, a: u64, b: u64) -> bool {
    let n = game.n();
    let mask = (1u64 << n) - 1;
    (0..game.copies()).all(|i| game.base_wins(game.coordinate(r, i), (a >> (n * i) & mask) as u16, (b >> (n * i) & mask) as u16))
}

fn count_wins(game: &GameSpec, questions: &[(u32, u32)], t: &TabulatedStrategy) -> u64 {
    questions.iter().enumerate().filter(|&(r, &(qa, qb))| wins_packed(game, r as u64, t.alice[qa as usize], t.bob[qb as usize])).count() as u64
}

/// Replaces one player's table by an exact best response.
fn improve(game: &GameSpec, questions: &[(u32, u32)], t: &mut TabulatedStrategy, answers: u64, alice: bool) {
    let size = t.alice.len();
    let mut score = vec![0u32; size * answers as usize];
    for (r, &(qa, qb)) in questions.iter().enumerate() {
        for c in 0..answers {
            let won = if alice { wins_packed(game, r as u64, c, t.bob[qb as usize]) } else { wins_packed(game, r as u64, t.alice[qa as usize], c) };
            if won {
                let q = if alice { qa } else { qb } as usize;
                score[q * answers as usize + c as usize] += 1;
            }
        }
    }
    let table = if alice { &mut t.alice } else { &mut t.bob };
    for (q, slot) in table.iter_mut().enumerate() {
        let row = &score[q * answers as usize..(q + 1) * answers as usize];
        let current = row[*slot as usize];
        let (arg, &top) = row.iter().enumerate().max_by_key(|&(c, &s)| (s, core::cmp::Reverse(c))).expect("nonempty");
        if top > current {
            *slot = arg as u64;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::spec::{game_pauli_agreement, game_z1};
    use super::*;
    use crate::lattice::MaximalSystem;
    use crate::solvers::contradiction_triangles;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn z1_synchronous_value() {
        let g = game_z1().unwrap();
        let r = val_syn_search(&g, 5_000_000).unwrap();
        assert!(r.report.proof_closed);
        assert!(r.below_one);
        assert_eq!(r.report.lower, r.report.upper);
        let Certificate::Contextual(f) = &r.report.certificate else { panic!() };
        let sys = MaximalSystem::new(2).unwrap();
        let pairs = sys.pairs_at_distance(1).unwrap();
        let tri = contradiction_triangles(&sys, &pairs, f).unwrap();
        assert_eq!(Some(tri.inconsistent_pairs), r.lost_rounds);
        assert!(r.report.upper < Ratio::new(1, 1));
    }

    #[test]
    fn agreement_synchronous_is_one_minus_two_cval() {
        let g = game_pauli_agreement(2).unwrap();
        let r = val_syn_search(&g, 50_000_000).unwrap();
        assert!(r.report.proof_closed);
        assert_eq!(r.report.lower, Ratio::new(41, 45));
    }

    #[test]
    fn best_response_dominates_synchronous() {
        let g = game_z1().unwrap();
        let syn = val_syn_search(&g, 5_000_000).unwrap();
        let Certificate::Contextual(f) = syn.report.certificate.clone() else { panic!() };
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let b = best_response_search(&g, Some(&Strategy::Synchronous(f)), 8, &mut rng).unwrap();
        let s = syn.report.lower;
        assert!(b.value >= Ratio::new(u128::from(*s.numer()), u128::from(*s.denom())));
        assert!(b.value < Ratio::from_integer(1));
        let v = evaluate(&g, &b.strategy, EvalMode::Exact).unwrap();
        assert_eq!(v.exact, Some(b.value));
    }
}
