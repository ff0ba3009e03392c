use alloc::vec::Vec;

use num_rational::Ratio;
use rand::Rng;

use super::assignment::SolveReport;
use super::mis::{greedy_independent_set, is_clique_cover, local_search, maximum_independent_set_from};
use crate::error::{Error, Result};
use crate::graphs::{
    disjunctive_product, random_regular_graph, spectrum, t_value, walk_bound, walk_graph, LabeledGraph, OutcomeVertex,
    WalkVertex,
};
use crate::lattice::MaximalSystem;
use crate::matrix::{outcome_state, StateVector, MAX_MATRIX_QUBITS};
#[allow(unused_imports)]
use num_traits::Float;

/// Two-sided certificate for `θ(S_n) = |ℒⁿ_n|`.
#[derive(Clone, Debug, PartialEq)]
pub struct ThetaCertificate {
    pub n: usize,
    pub theta: usize,
    /// Measurement classes: the outcomes of one measurement form a clique.
    pub cover: Vec<Vec<u32>>,
    pub cover_valid: bool,
    /// Random states `ψ` for which `Σ_v |⟨ψ|s_v⟩|²` was evaluated.
    pub samples: usize,
    /// Largest `|Σ_v |⟨ψ|s_v⟩|² − |ℒⁿ_n||` over the samples.
    pub max_deviation: f64,
}

impl ThetaCertificate {
    pub fn passes(&self, tol: f64) -> bool {
        self.cover_valid && self.cover.len() == self.theta && self.samples > 0 && self.max_deviation <= tol
    }
}

/// Clique cover by measurements and the representation sum over the
/// stabilizer states of all outcomes.
pub fn theta_sn<R: Rng + ?Sized>(
    system: &MaximalSystem,
    g: &LabeledGraph<OutcomeVertex>,
    samples: usize,
    rng: &mut R,
) -> Result<ThetaCertificate> {
    let n = system.n();
    if n > MAX_MATRIX_QUBITS {
        return Err(Error::Capacity { what: "qubits for the representation sum", value: n as u64, limit: MAX_MATRIX_QUBITS as u64 });
    }
    let mut cover: Vec<Vec<u32>> = alloc::vec![Vec::new(); system.len()];
    for (i, v) in g.vertices().iter().enumerate() {
        cover[v.measurement as usize].push(i as u32);
    }
    let cover_valid = is_clique_cover(g, &cover);
    let states = g
        .vertices()
        .iter()
        .map(|v| outcome_state(&system.outcome(v.measurement as usize, usize::from(v.outcome))))
        .collect::<Result<Vec<_>>>()?;
    let dim = 1usize << n;
    let mut max_deviation: f64 = 0.0;
    for _ in 0..samples {
        let psi = StateVector::random(dim, rng);
        let sum: f64 = states.iter().map(|s| psi.inner(s).norm_sqr()).sum();
        max_deviation = max_deviation.max((sum - system.len() as f64).abs());
    }
    Ok(ThetaCertificate { n, theta: system.len(), cover, cover_valid, samples, max_deviation })
}

/// `α(S_n)/θ(S_n)` as an interval, from a Pval report.
#[derive(Clone, Debug, PartialEq)]
pub struct AlphaThetaRatio {
    pub n: usize,
    pub lower: f64,
    pub upper: f64,
    pub exact: bool,
    /// `log₂` of the ratio bounds, i.e. the measured exponent.
    pub log2_lower: f64,
    pub log2_upper: f64,
}

/// Since `θ(S_n) = |ℒⁿ_n|`, the ratio equals `Pval(ℒⁿ)`.
pub fn stabilizer_alpha_theta(report: &SolveReport) -> AlphaThetaRatio {
    let f = |r: Ratio<u64>| *r.numer() as f64 / *r.denom() as f64;
    let (lower, upper) = (f(report.lower), f(report.upper));
    AlphaThetaRatio {
        n: report.n,
        lower,
        upper,
        exact: report.optimum().is_some(),
        log2_lower: lower.log2(),
        log2_upper: upper.log2(),
    }
}

/// `T` of a product graph against its factor, with `θ` certified by the
/// product clique cover and the product representation.
#[derive(Clone, Debug, PartialEq)]
pub struct ProductT {
    pub alpha: usize,
    pub alpha_product: usize,
    pub theta: usize,
    pub theta_product: usize,
    pub vertices: usize,
    pub vertices_product: usize,
    pub t: f64,
    pub t_product: f64,
    pub closed: bool,
}

/// `T(G)` and `T(G ⊗ G)` with `α` from exact search and `θ` supplied for
/// `G` (squared for the product, where the product of clique covers and
/// the tensor product of representations certify it).
pub fn product_t<P: Clone>(g: &LabeledGraph<P>, theta: usize, budget: u64) -> Result<ProductT> {
    let gg = disjunctive_product(g, g);
    let a = maximum_independent_set_from(g, budget, &greedy_independent_set(g));
    let b = maximum_independent_set_from(&gg, budget, &greedy_independent_set(&gg));
    let t = t_value(a.lower as f64, theta as f64, g.order())?;
    let t_product = t_value(b.lower as f64, (theta * theta) as f64, gg.order())?;
    Ok(ProductT {
        alpha: a.lower,
        alpha_product: b.lower,
        theta,
        theta_product: theta * theta,
        vertices: g.order(),
        vertices_product: gg.order(),
        t,
        t_product,
        closed: a.closed && b.closed,
    })
}

/// The walk-graph pipeline on two qubits.
#[derive(Clone, Debug, PartialEq)]
pub struct WalkReport {
    pub k: usize,
    pub degree: usize,
    pub r_vertices: usize,
    pub lambda_over_d: f64,
    pub vertices: usize,
    /// Number of walks; the walk classes form a clique cover of this size.
    pub theta: usize,
    pub cover_valid: bool,
    pub alpha_lower: usize,
    pub alpha_upper: usize,
    pub closed: bool,
    /// `T` computed from `α_lower`, hence an upper bound on `T(W)`.
    pub t_upper: f64,
    /// `T` from `α_upper`, a lower bound on `T(W)`.
    pub t_lower: f64,
    pub pval: f64,
    /// `(μ′ + (λ/d)(1 − μ′))^k`.
    pub bound: f64,
    /// `α_lower/θ ≤ bound`: the best independent set found respects the bound.
    pub bound_holds: bool,
    /// `α_upper/θ ≤ bound`: the bound is proven for this instance.
    pub bound_certified: bool,
}

/// Walks of length `k` on a random `d`-regular graph `R` over all maximal
/// measurements, with `d = ⌈1/Pval²⌉`.
pub fn walk_pipeline<R: Rng + ?Sized>(
    system: &MaximalSystem,
    pval: Ratio<u64>,
    k: usize,
    seed: u64,
    budget: u64,
    rng: &mut R,
) -> Result<WalkReport> {
    let p = *pval.numer() as f64 / *pval.denom() as f64;
    let degree = (1.0 / (p * p)).ceil() as usize;
    let r = random_regular_graph(system.len(), degree, seed)?;
    let lambda_over_d = spectrum(&r)?.lambda_nontrivial / degree as f64;
    let w: LabeledGraph<WalkVertex> = walk_graph(system, &r, k)?;
    let per = system.outcome_count().pow(k as u32);
    let theta = w.order() / per;
    let cover: Vec<Vec<u32>> = (0..theta).map(|c| ((c * per) as u32..((c + 1) * per) as u32).collect()).collect();
    let cover_valid = is_clique_cover(&w, &cover);
    let start = local_search(&w, &greedy_independent_set(&w), 50, rng);
    let mis = maximum_independent_set_from(&w, budget, &start);
    let upper = mis.upper.min(theta);
    let t_upper = t_value(mis.lower as f64, theta as f64, w.order())?;
    let t_lower = t_value(upper as f64, theta as f64, w.order())?;
    let bound = walk_bound(p, system.len(), r.order(), lambda_over_d, k);
    Ok(WalkReport {
        k,
        degree,
        r_vertices: r.order(),
        lambda_over_d,
        vertices: w.order(),
        theta,
        cover_valid,
        alpha_lower: mis.lower,
        alpha_upper: upper,
        closed: mis.closed,
        t_upper,
        t_lower,
        pval: p,
        bound,
        bound_holds: mis.lower as f64 / theta as f64 <= bound + 1e-12,
        bound_certified: upper as f64 / theta as f64 <= bound + 1e-12,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::build_sn;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn theta_small() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in 1..=2 {
            let sys = MaximalSystem::new(n).unwrap();
            let g = build_sn(&sys).unwrap();
            let c = theta_sn(&sys, &g, 10, &mut rng).unwrap();
            assert!(c.passes(1e-9), "{c:?}");
        }
    }

    #[test]
    fn octahedron_product() {
        let sys = MaximalSystem::new(1).unwrap();
        let g = build_sn(&sys).unwrap();
        let t = product_t(&g, 3, u64::MAX).unwrap();
        assert!(t.closed);
        assert_eq!((t.alpha, t.alpha_product, t.vertices_product), (3, 9, 36));
        assert_eq!(t.t, t.t_product);
    }
}
