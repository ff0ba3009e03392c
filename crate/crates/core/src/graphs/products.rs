use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::graph::LabeledGraph;
use crate::error::{Error, Result};
use crate::lattice::MaximalSystem;
#[allow(unused_imports)]
use num_traits::Float;

/// Restarts allowed before [`random_regular_graph`] gives up.
pub const MAX_RESTARTS: usize = 10_000;

/// Uniform-ish simple `d`-regular graph on `v` vertices. Points of the
/// pairing model are matched one random pair at a time; a pair that would
/// form a loop or a repeated edge is redrawn, and the whole attempt restarts
/// when no admissible pair remains.
pub fn random_regular_graph(v: usize, d: usize, seed: u64) -> Result<LabeledGraph<u32>> {
    if (v * d) % 2 == 1 || d >= v.max(1) {
        return Err(Error::InfeasibleRegular { v, d });
    }
    let vertices: Vec<u32> = (0..v as u32).collect();
    if d + 1 == v {
        return Ok(LabeledGraph::from_predicate(vertices, |_, _| true));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    'restart: for _ in 0..MAX_RESTARTS {
        let mut points: Vec<u32> = (0..v * d).map(|p| (p / d) as u32).collect();
        let mut adj: Vec<Vec<u32>> = vec![Vec::with_capacity(d); v];
        while !points.is_empty() {
            let mut placed = false;
            for _ in 0..64 {
                let i = rng.gen_range(0..points.len());
                let j = rng.gen_range(0..points.len());
                let (a, b) = (points[i], points[j]);
                if i == j || a == b || adj[a as usize].contains(&b) {
                    continue;
                }
                adj[a as usize].push(b);
                adj[b as usize].push(a);
                let (hi, lo) = (i.max(j), i.min(j));
                points.swap_remove(hi);
                points.swap_remove(lo);
                placed = true;
                break;
            }
            if !placed {
                let stuck = points.iter().enumerate().all(|(i, &a)| {
                    points[i + 1..].iter().all(|&b| a == b || adj[a as usize].contains(&b))
                });
                if stuck {
                    continue 'restart;
                }
            }
        }
        let edges = adj.iter().enumerate().flat_map(|(a, l)| l.iter().map(move |&b| (a, b as usize)));
        return LabeledGraph::from_edges(vertices, edges);
    }
    Err(Error::InfeasibleRegular { v, d })
}

/// `(g, h) ~ (g′, h′)` iff `g ~ g′` or `h ~ h′`.
pub fn disjunctive_product<P: Clone, Q: Clone>(g: &LabeledGraph<P>, h: &LabeledGraph<Q>) -> LabeledGraph<(P, Q)> {
    let nh = h.order();
    let vertices: Vec<(P, Q)> =
        g.vertices().iter().flat_map(|p| h.vertices().iter().map(move |q| (p.clone(), q.clone()))).collect();
    let (g, h) = (g.clone(), h.clone());
    let idx: Vec<usize> = (0..vertices.len()).collect();
    let graph = LabeledGraph::from_predicate(idx, |&a, &b| g.has_edge(a / nh, b / nh) || h.has_edge(a % nh, b % nh));
    let mut it = vertices.into_iter();
    graph.map_payload(|_| it.next().expect("same length"))
}

/// Vertex of a walk graph: a walk on `R` (measurement indices) and one
/// outcome per step.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WalkVertex {
    pub walk: Vec<u32>,
    pub outcomes: Vec<u16>,
}

/// Largest vertex count accepted by [`walk_graph`].
pub const MAX_WALK_VERTICES: usize = 8192;

/// All length-`k` walks on `r` (starting anywhere, `k − 1` steps), in
/// lexicographic order of vertex indices of `r`.
pub fn walks(r: &LabeledGraph<u32>, k: usize) -> Vec<Vec<u32>> {
    let mut out: Vec<Vec<u32>> = (0..r.order() as u32).map(|v| vec![v]).collect();
    for _ in 1..k {
        out = out
            .into_iter()
            .flat_map(|w| {
                let last = *w.last().expect("nonempty") as usize;
                r.neighbors(last).iter().map(move |&nb| {
                    let mut w2 = w.clone();
                    w2.push(nb);
                    w2
                })
            })
            .collect();
    }
    out
}

/// Outcome graph `W` of the walks of length `k` on `r`, whose payloads
/// are indices into `system`. Two vertices are adjacent when some step
/// carries inconsistent outcomes.
pub fn walk_graph(system: &MaximalSystem, r: &LabeledGraph<u32>, k: usize) -> Result<LabeledGraph<WalkVertex>> {
    if k == 0 {
        return Err(Error::InvalidArgument("walk length must be positive".into()));
    }
    let per = system.outcome_count();
    let ws = walks(r, k);
    let total = ws.len().saturating_mul(per.saturating_pow(k as u32));
    if total > MAX_WALK_VERTICES {
        return Err(Error::Capacity { what: "walk graph vertices", value: total as u64, limit: MAX_WALK_VERTICES as u64 });
    }
    let mut vertices = Vec::with_capacity(total);
    for w in &ws {
        let walk: Vec<u32> = w.iter().map(|&i| *r.payload(i as usize)).collect();
        for code in 0..per.pow(k as u32) {
            let outcomes = (0..k).map(|j| ((code / per.pow((k - 1 - j) as u32)) % per) as u16).collect();
            vertices.push(WalkVertex { walk: walk.clone(), outcomes });
        }
    }
    Ok(LabeledGraph::from_predicate(vertices, |a, b| {
        (0..k).any(|j| {
            !system.consistent(a.walk[j] as usize, a.outcomes[j] as usize, b.walk[j] as usize, b.outcomes[j] as usize)
        })
    }))
}

/// `ln(θ/α)/ln|V|`.
pub fn t_value(alpha: f64, theta: f64, v_count: usize) -> Result<f64> {
    if alpha < 1.0 || v_count < 2 {
        return Err(Error::InvalidArgument("t_value needs α ≥ 1 and |V| ≥ 2".into()));
    }
    if theta < alpha * (1.0 - 1e-12) {
        return Err(Error::ThetaBelowAlpha { alpha, theta });
    }
    Ok(((theta / alpha).ln() / (v_count as f64).ln()).max(0.0))
}

/// `(μ′ + (λ/d)(1 − μ′))^k` with `μ′ = Pval·|ℒⁿ_n|/|V(R)|`.
pub fn walk_bound(pval: f64, maximal: usize, r_vertices: usize, lambda_over_d: f64, k: usize) -> f64 {
    let mu = (pval * maximal as f64 / r_vertices as f64).min(1.0);
    (mu + lambda_over_d * (1.0 - mu)).powi(k as i32)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn regular_graphs() {
        let k5 = random_regular_graph(5, 4, 0).unwrap();
        assert_eq!(k5.edge_count(), 10);
        let g = random_regular_graph(256, 8, 42).unwrap();
        assert_eq!(g.regular_degree(), Some(8));
        assert!(g.is_well_formed());
        assert_eq!(g.degree_histogram().len(), 1);
        assert!(matches!(random_regular_graph(5, 3, 0), Err(Error::InfeasibleRegular { .. })));
        assert_eq!(random_regular_graph(256, 8, 42).unwrap(), g);
    }

    #[test]
    fn product_of_edges() {
        let k2 = LabeledGraph::from_predicate(vec![0u8, 1], |_, _| true);
        let p = disjunctive_product(&k2, &k2);
        assert_eq!(p.order(), 4);
        assert_eq!(p.edge_count(), 6);
        assert_eq!(p.payload(3), &(1, 1));
    }

    #[test]
    fn t_values() {
        assert_eq!(t_value(3.0, 3.0, 6).unwrap(), 0.0);
        let t = t_value(12.0, 15.0, 60).unwrap();
        assert!((t - 1.25f64.ln() / 60f64.ln()).abs() < 1e-15);
        assert!(t_value(12.0, 11.0, 60).is_err());
    }

    #[test]
    fn walk_counts() {
        let sys = MaximalSystem::new(1).unwrap();
        let r = LabeledGraph::from_predicate(vec![0u32, 1, 2], |_, _| true);
        let w = walk_graph(&sys, &r, 2).unwrap();
        assert_eq!(w.order(), 3 * 2 * 4);
        let single = walk_graph(&sys, &r, 1).unwrap();
        assert_eq!(single.edge_count(), 3);
    }
}
