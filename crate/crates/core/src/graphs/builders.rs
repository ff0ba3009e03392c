use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::graph::{BipartiteGraph, LabeledGraph};
use crate::error::{Error, Result};
use crate::gf2::{GF2Vector, IsotropicSubspace};
use crate::lattice::MaximalSystem;
use crate::matrix::{outcome_projector, outcome_state};

/// Vertex of the outcome graph `S_n`: outcome `outcome` of maximal
/// measurement `measurement` (indices into a [`MaximalSystem`]).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OutcomeVertex {
    pub measurement: u32,
    pub outcome: u16,
}

fn direction(system: &MaximalSystem, w: &GF2Vector) -> Result<usize> {
    if w.n() != system.n() {
        return Err(Error::DimensionMismatch { left: w.n(), right: system.n() });
    }
    system.direction_of(w).ok_or_else(|| Error::InvalidArgument("w must be a nonzero vector".into()))
}

fn above_graph(system: &MaximalSystem, w: &GF2Vector, d: usize) -> Result<LabeledGraph<u32>> {
    let dir = direction(system, w)?;
    let vertices = system.above(dir).to_vec();
    Ok(LabeledGraph::from_predicate(vertices, |&x, &y| system.distance(x as usize, y as usize) == d))
}

/// `G′_w`: maximal measurements above `w`, adjacent at distance one.
/// Payloads are measurement indices.
pub fn build_gw_prime(system: &MaximalSystem, w: &GF2Vector) -> Result<LabeledGraph<u32>> {
    above_graph(system, w, 1)
}

/// `G_w`: maximal measurements above `w`, adjacent at distance `n/2`.
pub fn build_gw(system: &MaximalSystem, w: &GF2Vector) -> Result<LabeledGraph<u32>> {
    if system.n() % 2 == 1 {
        return Err(Error::OddQubitCount(system.n()));
    }
    above_graph(system, w, system.n() / 2)
}

/// The conventional first direction, `Z` on qubit 0.
pub fn default_direction(n: usize) -> Result<GF2Vector> {
    GF2Vector::z_on(n, 0)
}

/// `B_{n,2}`: maximal measurements on the left, two-dimensional isotropic
/// subspaces on the right (sorted), joined by containment.
pub fn build_b_n2(system: &MaximalSystem) -> Result<BipartiteGraph<u32, IsotropicSubspace>> {
    let n = system.n();
    if n < 3 {
        return Err(Error::InvalidArgument(alloc::format!("B_(n,2) needs n ≥ 3, got {n}")));
    }
    let mut per_left: Vec<Vec<IsotropicSubspace>> = Vec::with_capacity(system.len());
    let mut right: BTreeMap<IsotropicSubspace, u32> = BTreeMap::new();
    for x in 0..system.len() {
        let dirs = system.contained(x);
        let mut subs = Vec::new();
        for (i, &a) in dirs.iter().enumerate() {
            for &b in &dirs[i + 1..] {
                let s = IsotropicSubspace::canonicalize(&[system.direction_vector(a as usize), system.direction_vector(b as usize)])?;
                subs.push(s);
            }
        }
        subs.sort();
        subs.dedup();
        for s in &subs {
            right.entry(s.clone()).or_insert(0);
        }
        per_left.push(subs);
    }
    for (i, slot) in right.values_mut().enumerate() {
        *slot = i as u32;
    }
    let incidence = per_left
        .iter()
        .map(|subs| {
            let mut ids: Vec<u32> = subs.iter().map(|s| right[s]).collect();
            ids.sort_unstable();
            ids
        })
        .collect();
    Ok(BipartiteGraph { left: (0..system.len() as u32).collect(), right: right.into_keys().collect(), incidence })
}

/// Largest `n` accepted by [`build_sn`].
pub const MAX_SN_QUBITS: usize = 3;

/// `S_n`: every outcome of every maximal measurement, adjacent when
/// inconsistent. At `n ≤ 2` vertices are identified with their rank-one
/// projectors and duplicates are rejected; at `n = 3` outcome labels are
/// used directly.
pub fn build_sn(system: &MaximalSystem) -> Result<LabeledGraph<OutcomeVertex>> {
    let n = system.n();
    if n == 0 || n > MAX_SN_QUBITS {
        return Err(Error::Capacity { what: "qubits for S_n", value: n as u64, limit: MAX_SN_QUBITS as u64 });
    }
    let vertices: Vec<OutcomeVertex> = (0..system.len() as u32)
        .flat_map(|x| (0..system.outcome_count() as u16).map(move |o| OutcomeVertex { measurement: x, outcome: o }))
        .collect();
    if n <= 2 {
        let projectors = vertices
            .iter()
            .map(|v| outcome_projector(&system.outcome(v.measurement as usize, v.outcome as usize)))
            .collect::<Result<Vec<_>>>()?;
        for i in 0..projectors.len() {
            for j in i + 1..projectors.len() {
                if projectors[i].approx_eq(&projectors[j], 1e-9) {
                    return Err(Error::InvalidArgument(alloc::format!("outcomes {i} and {j} share a projector")));
                }
            }
        }
    }
    Ok(LabeledGraph::from_predicate(vertices, |a, b| {
        !system.consistent(a.measurement as usize, a.outcome as usize, b.measurement as usize, b.outcome as usize)
    }))
}

/// Compares `S_n` adjacency with orthogonality of the stabilizer states on
/// every pair. Returns `(pairs checked, mismatches)`.
pub fn sn_orthogonality_agreement(system: &MaximalSystem, g: &LabeledGraph<OutcomeVertex>) -> Result<(u64, u64)> {
    if system.n() > 2 {
        return Err(Error::Capacity { what: "qubits for the orthogonality oracle", value: system.n() as u64, limit: 2 });
    }
    let states = g
        .vertices()
        .iter()
        .map(|v| outcome_state(&system.outcome(v.measurement as usize, v.outcome as usize)))
        .collect::<Result<Vec<_>>>()?;
    let (mut checked, mut bad) = (0, 0);
    for i in 0..states.len() {
        for j in i + 1..states.len() {
            let orthogonal = states[i].inner(&states[j]).norm() < 1e-9;
            checked += 1;
            if orthogonal != g.has_edge(i, j) {
                bad += 1;
            }
        }
    }
    Ok((checked, bad))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_gw() {
        let sys = MaximalSystem::new(2).unwrap();
        let w = default_direction(2).unwrap();
        let g = build_gw_prime(&sys, &w).unwrap();
        assert_eq!((g.order(), g.regular_degree()), (3, Some(2)));
        assert_eq!(build_gw(&sys, &w).unwrap(), g);
    }

    #[test]
    fn octahedron() {
        let sys = MaximalSystem::new(1).unwrap();
        let g = build_sn(&sys).unwrap();
        assert_eq!((g.order(), g.regular_degree()), (6, Some(1)));
        assert_eq!(sn_orthogonality_agreement(&sys, &g).unwrap(), (15, 0));
    }

    #[test]
    fn sn_two() {
        let sys = MaximalSystem::new(2).unwrap();
        let g = build_sn(&sys).unwrap();
        assert_eq!(g.order(), 60);
        assert!(g.is_well_formed());
        assert_eq!(sn_orthogonality_agreement(&sys, &g).unwrap(), (1770, 0));
    }

    #[test]
    fn b32_biregular() {
        let sys = MaximalSystem::new(3).unwrap();
        let b = build_b_n2(&sys).unwrap();
        assert_eq!((b.left.len(), b.right.len()), (135, 315));
        assert_eq!(b.left_degree(), Some(7));
        assert_eq!(b.right_degree(), Some(3));
    }
}
