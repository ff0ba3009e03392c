use alloc::vec;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::Rng;

use super::graph::{BipartiteGraph, LabeledGraph};
use crate::error::{Error, Result};
use crate::stats::{bernoulli_sigma, wilson_interval, Z_99};
#[allow(unused_imports)]
use num_traits::Float;

/// Both sides of a mixing inequality.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MixingReport {
    pub edges: u64,
    pub lhs: f64,
    pub rhs: f64,
    pub violated: bool,
}

const SLACK: f64 = 1e-9;

/// `|E(S,T) − Δ|S||T|/|V|| ≤ λ√(|S||T|)` on a regular graph.
pub fn mixing_check<P>(g: &LabeledGraph<P>, s: &[usize], t: &[usize], lambda: f64) -> Result<MixingReport> {
    let d = g.regular_degree().ok_or(Error::Irregular)? as f64;
    let edges = g.edges_between(s, t)?;
    let (ns, nt, nv) = (s.len() as f64, t.len() as f64, g.order() as f64);
    let lhs = (edges as f64 - d * ns * nt / nv).abs();
    let rhs = lambda * (ns * nt).sqrt();
    Ok(MixingReport { edges, lhs, rhs, violated: lhs > rhs + SLACK * rhs.max(1.0) })
}

/// `|E(S,T)/|E| − αβ| ≤ λ/√(Δ_L Δ_R) · √(αβ(1−α)(1−β))` for `S ⊆ L`, `T ⊆ R`.
pub fn bipartite_mixing_check<L, R>(b: &BipartiteGraph<L, R>, s: &[usize], t: &[usize], lambda: f64) -> Result<MixingReport> {
    let dl = b.left_degree().ok_or(Error::Irregular)? as f64;
    let dr = b.right_degree().ok_or(Error::Irregular)? as f64;
    let edges = b.edges_between(s, t)?;
    let alpha = s.len() as f64 / b.left.len() as f64;
    let beta = t.len() as f64 / b.right.len() as f64;
    let lhs = (edges as f64 / b.edge_count() as f64 - alpha * beta).abs();
    let rhs = lambda / (dl * dr).sqrt() * (alpha * beta * (1.0 - alpha) * (1.0 - beta)).sqrt();
    Ok(MixingReport { edges, lhs, rhs, violated: lhs > rhs + SLACK })
}

/// A uniformly sized random subset of `0..n`, sorted.
pub fn random_subset<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vec<usize> {
    let size = rng.gen_range(1..=n);
    let mut all: Vec<usize> = (0..n).collect();
    all.shuffle(rng);
    all.truncate(size);
    all.sort_unstable();
    all
}

/// Totals over repeated randomized mixing trials.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct MixingTrials {
    pub trials: u64,
    pub violations: u64,
    /// Largest `lhs / rhs` seen (where `rhs > 0`).
    pub worst_ratio: f64,
}

impl MixingTrials {
    fn record(&mut self, r: &MixingReport) {
        self.trials += 1;
        self.violations += u64::from(r.violated);
        if r.rhs > 0.0 {
            self.worst_ratio = self.worst_ratio.max(r.lhs / r.rhs);
        }
    }
}

pub fn mixing_trials<P, R: Rng + ?Sized>(g: &LabeledGraph<P>, lambda: f64, trials: u64, rng: &mut R) -> Result<MixingTrials> {
    let mut out = MixingTrials::default();
    for _ in 0..trials {
        let s = random_subset(g.order(), rng);
        let t = random_subset(g.order(), rng);
        out.record(&mixing_check(g, &s, &t, lambda)?);
    }
    Ok(out)
}

pub fn bipartite_mixing_trials<L, Q, R: Rng + ?Sized>(
    b: &BipartiteGraph<L, Q>,
    lambda: f64,
    trials: u64,
    rng: &mut R,
) -> Result<MixingTrials> {
    let mut out = MixingTrials::default();
    for _ in 0..trials {
        let s = random_subset(b.left.len(), rng);
        let t = random_subset(b.right.len(), rng);
        out.record(&bipartite_mixing_check(b, &s, &t, lambda)?);
    }
    Ok(out)
}

/// Monte Carlo estimate of `Pr(vᵢ ∈ Aᵢ ∀i)` for a uniform random walk.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HittingReport {
    pub samples: u64,
    pub hits: u64,
    pub estimate: f64,
    pub interval: (f64, f64),
    pub mu: f64,
    /// `(μ + (λ/Δ)(1−μ))^k`.
    pub bound: f64,
    pub sigma: f64,
    /// `estimate ≤ bound + 3σ`.
    pub pass: bool,
}

/// `(μ + ρ(1−μ))^k`.
pub fn hitting_bound(mu: f64, ratio: f64, k: usize) -> f64 {
    (mu + ratio * (1.0 - mu)).powi(k as i32)
}

/// Walks start uniformly and take `k − 1` uniform neighbor steps; `sets[i]`
/// is the membership mask of `Aᵢ`. `μ` is the largest density among the sets.
pub fn hitting_walk_test<P, R: Rng + ?Sized>(
    g: &LabeledGraph<P>,
    sets: &[Vec<bool>],
    lambda: f64,
    samples: u64,
    rng: &mut R,
) -> Result<HittingReport> {
    let d = g.regular_degree().ok_or(Error::Irregular)?;
    let v = g.order();
    if sets.is_empty() || d == 0 {
        return Err(Error::InvalidArgument("need at least one set and positive degree".into()));
    }
    if let Some(bad) = sets.iter().find(|s| s.len() != v) {
        return Err(Error::DimensionMismatch { left: bad.len(), right: v });
    }
    let mu = sets.iter().map(|s| s.iter().filter(|&&b| b).count() as f64 / v as f64).fold(0.0, f64::max);
    let mut hits = 0;
    for _ in 0..samples {
        let mut cur = rng.gen_range(0..v);
        let mut ok = sets[0][cur];
        for set in &sets[1..] {
            if !ok {
                break;
            }
            let nb = g.neighbors(cur);
            cur = nb[rng.gen_range(0..nb.len())] as usize;
            ok = set[cur];
        }
        hits += u64::from(ok);
    }
    let estimate = hits as f64 / samples as f64;
    let bound = hitting_bound(mu, lambda / d as f64, sets.len());
    let sigma = bernoulli_sigma(bound.min(1.0), samples);
    Ok(HittingReport {
        samples,
        hits,
        estimate,
        interval: wilson_interval(hits, samples, Z_99),
        mu,
        bound,
        sigma,
        pass: estimate <= bound + 3.0 * sigma,
    })
}

/// `k` random subsets of `0..v`, each of size `size`, as membership masks.
pub fn random_sets<R: Rng + ?Sized>(v: usize, size: usize, k: usize, rng: &mut R) -> Vec<Vec<bool>> {
    (0..k)
        .map(|_| {
            let mut all: Vec<usize> = (0..v).collect();
            all.shuffle(rng);
            let mut mask = vec![false; v];
            for &i in &all[..size.min(v)] {
                mask[i] = true;
            }
            mask
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn k4() -> LabeledGraph<()> {
        LabeledGraph::from_predicate(vec![(); 4], |_, _| true)
    }

    #[test]
    fn whole_vertex_set_is_exact() {
        let g = k4();
        let all = [0, 1, 2, 3];
        let r = mixing_check(&g, &all, &all, 1.0).unwrap();
        assert_eq!(r.edges, 12);
        assert!(r.lhs < 1e-12 && !r.violated);
    }

    #[test]
    fn full_sets_hit_always() {
        let g = k4();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let r = hitting_walk_test(&g, &[vec![true; 4], vec![true; 4]], 1.0, 100, &mut rng).unwrap();
        assert_eq!((r.estimate, r.bound, r.pass), (1.0, 1.0, true));
    }

    #[test]
    fn random_trials_on_complete_graph() {
        let g = k4();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let t = mixing_trials(&g, 1.0, 200, &mut rng).unwrap();
        assert_eq!(t.violations, 0);
    }
}
