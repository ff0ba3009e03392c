//! Maximum independent set by branch and bound.
//!
//! The search runs as a maximum-clique search on the complement graph
//! with greedy colouring bounds. A colour class of the complement is a
//! clique of the original graph, so every bound used is a clique-cover
//! bound. Node budgets make the search stop with honest bounds.

use alloc::vec;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::graphs::LabeledGraph;

#[derive(Clone, Debug, PartialEq, Eq)]
struct Bits(Vec<u64>);

impl Bits {
    fn empty(n: usize) -> Self {
        Bits(vec![0; n.div_ceil(64)])
    }

    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn clear(&mut self, i: usize) {
        self.0[i / 64] &= !(1 << (i % 64));
    }

    fn is_empty(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }

    fn first(&self) -> Option<usize> {
        self.0.iter().enumerate().find(|(_, &w)| w != 0).map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }

    fn and(&self, o: &Bits) -> Bits {
        Bits(self.0.iter().zip(&o.0).map(|(a, b)| a & b).collect())
    }

    fn and_not_assign(&mut self, o: &Bits) {
        for (a, b) in self.0.iter_mut().zip(&o.0) {
            *a &= !b;
        }
    }
}

/// Outcome of a maximum independent set search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MisResult {
    /// Best independent set found (vertex indices, ascending).
    pub best: Vec<u32>,
    pub lower: usize,
    /// Proven upper bound on `α`.
    pub upper: usize,
    pub nodes: u64,
    /// Whether the search finished, proving `lower = upper = α`.
    pub closed: bool,
}

struct Search {
    /// Complement adjacency in search order.
    comp: Vec<Bits>,
    best: Vec<usize>,
    nodes: u64,
    budget: u64,
    aborted: bool,
    open_bound: usize,
}

impl Search {
    fn colour(&self, cand: &Bits) -> (Vec<usize>, Vec<usize>) {
        let mut order = Vec::new();
        let mut colours = Vec::new();
        let mut u = cand.clone();
        let mut k = 0;
        while !u.is_empty() {
            k += 1;
            let mut q = u.clone();
            while let Some(v) = q.first() {
                u.clear(v);
                q.clear(v);
                q.and_not_assign(&self.comp[v]);
                order.push(v);
                colours.push(k);
            }
        }
        (order, colours)
    }

    fn expand(&mut self, clique: &mut Vec<usize>, mut cand: Bits) {
        self.nodes += 1;
        let (order, colours) = self.colour(&cand);
        for idx in (0..order.len()).rev() {
            let bound = clique.len() + colours[idx];
            if bound <= self.best.len() {
                return;
            }
            if self.aborted || self.nodes >= self.budget {
                self.aborted = true;
                self.open_bound = self.open_bound.max(bound);
                return;
            }
            let v = order[idx];
            let next = cand.and(&self.comp[v]);
            clique.push(v);
            if next.is_empty() {
                if clique.len() > self.best.len() {
                    self.best = clique.clone();
                }
            } else {
                self.expand(clique, next);
            }
            clique.pop();
            cand.clear(v);
        }
    }
}

/// Maximum independent set within `budget` search nodes, seeded with
/// `initial` (which must be independent) as the incumbent.
pub fn maximum_independent_set_from<P>(g: &LabeledGraph<P>, budget: u64, initial: &[u32]) -> MisResult {
    let n = g.order();
    if n == 0 {
        return MisResult { best: Vec::new(), lower: 0, upper: 0, nodes: 0, closed: true };
    }
    let mut perm: Vec<usize> = (0..n).collect();
    perm.sort_by_key(|&v| (g.degree(v), v));
    let mut pos = vec![0usize; n];
    for (i, &v) in perm.iter().enumerate() {
        pos[v] = i;
    }
    let comp: Vec<Bits> = perm
        .iter()
        .map(|&v| {
            let mut b = Bits::empty(n);
            for u in 0..n {
                b.set(u);
            }
            b.clear(pos[v]);
            for &w in g.neighbors(v) {
                b.clear(pos[w as usize]);
            }
            b
        })
        .collect();
    let mut all = Bits::empty(n);
    for i in 0..n {
        all.set(i);
    }
    let mut s = Search {
        comp,
        best: initial.iter().map(|&v| pos[v as usize]).collect(),
        nodes: 0,
        budget: budget.max(1),
        aborted: false,
        open_bound: 0,
    };
    let root = s.colour(&all).1.last().copied().unwrap_or(0);
    s.expand(&mut Vec::new(), all);
    let mut best: Vec<u32> = s.best.iter().map(|&i| perm[i] as u32).collect();
    best.sort_unstable();
    let lower = best.len();
    let upper = if s.aborted { s.open_bound.max(lower).min(root) } else { lower };
    MisResult { best, lower, upper, nodes: s.nodes, closed: !s.aborted }
}

/// [`maximum_independent_set_from`] seeded with a greedy solution.
pub fn maximum_independent_set<P>(g: &LabeledGraph<P>, budget: u64) -> MisResult {
    let greedy = greedy_independent_set(g);
    maximum_independent_set_from(g, budget, &greedy)
}

/// Edge-scan check that `set` is independent and duplicate-free.
pub fn is_independent_set<P>(g: &LabeledGraph<P>, set: &[u32]) -> bool {
    let mut seen = vec![false; g.order()];
    for &v in set {
        match seen.get_mut(v as usize) {
            Some(s) if !*s => *s = true,
            _ => return false,
        }
    }
    set.iter().all(|&v| g.neighbors(v as usize).iter().all(|&w| !seen[w as usize]))
}

/// Minimum-degree greedy independent set.
pub fn greedy_independent_set<P>(g: &LabeledGraph<P>) -> Vec<u32> {
    let n = g.order();
    let mut alive = vec![true; n];
    let mut deg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut out = Vec::new();
    while let Some(v) = (0..n).filter(|&v| alive[v]).min_by_key(|&v| (deg[v], v)) {
        out.push(v as u32);
        alive[v] = false;
        for &w in g.neighbors(v) {
            let w = w as usize;
            if alive[w] {
                alive[w] = false;
                for &x in g.neighbors(w) {
                    deg[x as usize] = deg[x as usize].saturating_sub(1);
                }
            }
        }
    }
    out.sort_unstable();
    out
}

/// Randomized `(1,2)`-swap local search: repeatedly removes one vertex of
/// the set and inserts two free non-adjacent vertices, with random
/// perturbations between rounds. Never returns a smaller set.
pub fn local_search<P, R: Rng + ?Sized>(g: &LabeledGraph<P>, start: &[u32], rounds: usize, rng: &mut R) -> Vec<u32> {
    let n = g.order();
    let mut inset = vec![false; n];
    for &v in start {
        inset[v as usize] = true;
    }
    // tight[v]: neighbours of v inside the set.
    let mut tight: Vec<usize> = (0..n).map(|v| g.neighbors(v).iter().filter(|&&w| inset[w as usize]).count()).collect();
    let add = |v: usize, inset: &mut Vec<bool>, tight: &mut Vec<usize>| {
        inset[v] = true;
        for &w in g.neighbors(v) {
            tight[w as usize] += 1;
        }
    };
    let remove = |v: usize, inset: &mut Vec<bool>, tight: &mut Vec<usize>| {
        inset[v] = false;
        for &w in g.neighbors(v) {
            tight[w as usize] -= 1;
        }
    };
    let mut best: Vec<u32> = start.to_vec();
    let mut order: Vec<usize> = (0..n).collect();
    for _ in 0..rounds {
        order.shuffle(rng);
        for &v in &order {
            if !inset[v] && tight[v] == 0 {
                add(v, &mut inset, &mut tight);
            }
        }
        let mut improved = true;
        while improved {
            improved = false;
            for &x in &order {
                if !inset[x] {
                    continue;
                }
                let cands: Vec<usize> = g.neighbors(x).iter().map(|&w| w as usize).filter(|&w| tight[w] == 1).collect();
                let pair = cands.iter().enumerate().find_map(|(i, &a)| {
                    cands[i + 1..].iter().find(|&&b| !g.has_edge(a, b)).map(|&b| (a, b))
                });
                if let Some((a, b)) = pair {
                    remove(x, &mut inset, &mut tight);
                    add(a, &mut inset, &mut tight);
                    add(b, &mut inset, &mut tight);
                    for &v in &order {
                        if !inset[v] && tight[v] == 0 {
                            add(v, &mut inset, &mut tight);
                        }
                    }
                    improved = true;
                }
            }
        }
        let size = inset.iter().filter(|&&b| b).count();
        if size > best.len() {
            best = (0..n as u32).filter(|&v| inset[v as usize]).collect();
        }
        let members: Vec<usize> = (0..n).filter(|&v| inset[v]).collect();
        let kicks = (members.len() / 10).max(1);
        for _ in 0..kicks {
            let v = order[rng.gen_range(0..n)];
            if !inset[v] {
                for &w in g.neighbors(v) {
                    if inset[w as usize] {
                        remove(w as usize, &mut inset, &mut tight);
                    }
                }
                add(v, &mut inset, &mut tight);
            }
        }
    }
    best
}

/// Greedy partition of the vertices into cliques (an upper bound on `α`).
pub fn greedy_clique_cover<P>(g: &LabeledGraph<P>) -> Vec<Vec<u32>> {
    let n = g.order();
    let mut used = vec![false; n];
    let mut cover = Vec::new();
    for v in 0..n {
        if used[v] {
            continue;
        }
        let mut clique = vec![v as u32];
        used[v] = true;
        for &w in g.neighbors(v) {
            let w = w as usize;
            if !used[w] && clique.iter().all(|&c| g.has_edge(c as usize, w)) {
                clique.push(w as u32);
                used[w] = true;
            }
        }
        clique.sort_unstable();
        cover.push(clique);
    }
    cover
}

/// Whether `classes` partition the vertex set into cliques.
pub fn is_clique_cover<P>(g: &LabeledGraph<P>, classes: &[Vec<u32>]) -> bool {
    let mut seen = vec![false; g.order()];
    for c in classes {
        for (i, &a) in c.iter().enumerate() {
            match seen.get_mut(a as usize) {
                Some(s) if !*s => *s = true,
                _ => return false,
            }
            if !c[i + 1..].iter().all(|&b| g.has_edge(a as usize, b as usize)) {
                return false;
            }
        }
    }
    seen.iter().all(|&s| s)
}

/// Exhaustive `α` for graphs with at most 64 vertices, by plain
/// include/exclude branching on bit masks. Used as an independent oracle.
pub fn brute_force_alpha<P>(g: &LabeledGraph<P>) -> Option<usize> {
    let n = g.order();
    if n > 64 {
        return None;
    }
    let masks: Vec<u64> = (0..n).map(|v| g.neighbors(v).iter().fold(0u64, |m, &w| m | 1 << w)).collect();
    fn go(masks: &[u64], cand: u64) -> usize {
        if cand == 0 {
            return 0;
        }
        let v = cand.trailing_zeros() as usize;
        let rest = cand & !(1 << v);
        if masks[v] & rest == 0 {
            return 1 + go(masks, rest);
        }
        go(masks, rest).max(1 + go(masks, rest & !masks[v]))
    }
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    Some(go(&masks, all))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn cycle(n: usize) -> LabeledGraph<()> {
        LabeledGraph::from_edges(vec![(); n], (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    #[test]
    fn cycles() {
        for n in 3..12 {
            let g = cycle(n);
            let r = maximum_independent_set(&g, u64::MAX);
            assert!(r.closed && is_independent_set(&g, &r.best));
            assert_eq!(r.lower, n / 2);
            assert_eq!(brute_force_alpha(&g), Some(n / 2));
        }
    }

    #[test]
    fn budget_gives_bounds() {
        let g = crate::graphs::random_regular_graph(60, 5, 3).unwrap();
        let r = maximum_independent_set(&g, 1);
        assert!(!r.closed && r.lower <= r.upper);
        let exact = maximum_independent_set(&g, u64::MAX);
        assert!(exact.closed && exact.lower <= r.upper && exact.lower >= r.lower);
        assert_eq!(brute_force_alpha(&g), Some(exact.lower));
    }

    #[test]
    fn local_search_keeps_independence() {
        let g = crate::graphs::random_regular_graph(100, 4, 9).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let start = greedy_independent_set(&g);
        let s = local_search(&g, &start, 20, &mut rng);
        assert!(is_independent_set(&g, &s));
        assert!(s.len() >= start.len());
        let cover = greedy_clique_cover(&g);
        assert!(is_clique_cover(&g, &cover));
        assert!(cover.len() >= s.len());
    }
}
