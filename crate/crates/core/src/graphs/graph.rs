use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// A simple undirected graph whose vertices carry payloads.
///
/// Adjacency lists are sorted, symmetric and loop-free; vertex order is the
/// order of the payload list given at construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledGraph<P> {
    vertices: Vec<P>,
    adj: Vec<Vec<u32>>,
}

impl<P> LabeledGraph<P> {
    /// Joins `i < j` whenever `adjacent(&vᵢ, &vⱼ)` holds.
    pub fn from_predicate<F: FnMut(&P, &P) -> bool>(vertices: Vec<P>, mut adjacent: F) -> Self {
        let n = vertices.len();
        let mut adj = vec![Vec::new(); n];
        for i in 0..n {
            for j in i + 1..n {
                if adjacent(&vertices[i], &vertices[j]) {
                    adj[i].push(j as u32);
                    adj[j].push(i as u32);
                }
            }
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Self { vertices, adj }
    }

    /// Builds from an edge list; duplicate edges collapse, loops are rejected.
    pub fn from_edges<I: IntoIterator<Item = (usize, usize)>>(vertices: Vec<P>, edges: I) -> Result<Self> {
        let n = vertices.len();
        let mut adj = vec![Vec::new(); n];
        for (u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { index: w, len: n });
                }
            }
            if u == v {
                return Err(Error::InvalidArgument(alloc::format!("self-loop at vertex {u}")));
            }
            adj[u].push(v as u32);
            adj[v].push(u as u32);
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        Ok(Self { vertices, adj })
    }

    pub fn order(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[P] {
        &self.vertices
    }

    pub fn payload(&self, i: usize) -> &P {
        &self.vertices[i]
    }

    pub fn neighbors(&self, i: usize) -> &[u32] {
        &self.adj[i]
    }

    pub fn adjacency_lists(&self) -> &[Vec<u32>] {
        &self.adj
    }

    pub fn degree(&self, i: usize) -> usize {
        self.adj[i].len()
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.adj[i].binary_search(&(j as u32)).is_ok()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// The common degree, if every vertex has the same one.
    pub fn regular_degree(&self) -> Option<usize> {
        let d = self.adj.first().map_or(0, Vec::len);
        self.adj.iter().all(|l| l.len() == d).then_some(d)
    }

    /// Degree → number of vertices with that degree.
    pub fn degree_histogram(&self) -> BTreeMap<usize, usize> {
        let mut h = BTreeMap::new();
        for l in &self.adj {
            *h.entry(l.len()).or_insert(0) += 1;
        }
        h
    }

    /// Row-major 0/1 adjacency matrix.
    pub fn dense_adjacency(&self) -> Vec<f64> {
        let n = self.order();
        let mut a = vec![0.0; n * n];
        for (i, l) in self.adj.iter().enumerate() {
            for &j in l {
                a[i * n + j as usize] = 1.0;
            }
        }
        a
    }

    /// Whether the structural invariants hold (symmetry, no loops, sorted).
    pub fn is_well_formed(&self) -> bool {
        self.adj.iter().enumerate().all(|(i, l)| {
            l.windows(2).all(|w| w[0] < w[1])
                && l.iter().all(|&j| j as usize != i && (j as usize) < self.order() && self.has_edge(j as usize, i))
        })
    }

    pub fn map_payload<Q, F: FnMut(&P) -> Q>(&self, f: F) -> LabeledGraph<Q> {
        LabeledGraph { vertices: self.vertices.iter().map(f).collect(), adj: self.adj.clone() }
    }

    /// `|E(S, T)|` as ordered pairs `(v, w) ∈ S × T` with `v ~ w`.
    pub fn edges_between(&self, s: &[usize], t: &[usize]) -> Result<u64> {
        let mut in_t = vec![false; self.order()];
        for &w in t {
            *in_t.get_mut(w).ok_or(Error::VertexOutOfRange { index: w, len: self.order() })? = true;
        }
        let mut count = 0;
        for &v in s {
            if v >= self.order() {
                return Err(Error::VertexOutOfRange { index: v, len: self.order() });
            }
            count += self.adj[v].iter().filter(|&&w| in_t[w as usize]).count() as u64;
        }
        Ok(count)
    }
}

/// Bipartite graph with left part, right part and left-to-right incidence.
#[derive(Clone, Debug)]
pub struct BipartiteGraph<L, R> {
    pub left: Vec<L>,
    pub right: Vec<R>,
    /// Sorted right neighbors of each left vertex.
    pub incidence: Vec<Vec<u32>>,
}

impl<L, R> BipartiteGraph<L, R> {
    pub fn edge_count(&self) -> usize {
        self.incidence.iter().map(Vec::len).sum()
    }

    pub fn left_degree(&self) -> Option<usize> {
        let d = self.incidence.first().map_or(0, Vec::len);
        self.incidence.iter().all(|l| l.len() == d).then_some(d)
    }

    pub fn right_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.right.len()];
        for l in &self.incidence {
            for &r in l {
                deg[r as usize] += 1;
            }
        }
        deg
    }

    pub fn right_degree(&self) -> Option<usize> {
        let deg = self.right_degrees();
        let d = deg.first().copied().unwrap_or(0);
        deg.iter().all(|&x| x == d).then_some(d)
    }

    /// `(BBᵀ)_{ij}`: common right neighbors of left vertices `i` and `j`.
    pub fn common_neighbors(&self, i: usize, j: usize) -> u32 {
        let (a, b) = (&self.incidence[i], &self.incidence[j]);
        let (mut p, mut q, mut c) = (0, 0, 0);
        while p < a.len() && q < b.len() {
            match a[p].cmp(&b[q]) {
                core::cmp::Ordering::Less => p += 1,
                core::cmp::Ordering::Greater => q += 1,
                core::cmp::Ordering::Equal => {
                    c += 1;
                    p += 1;
                    q += 1;
                }
            }
        }
        c
    }

    /// Row-major `BBᵀ` over the left part.
    pub fn gram_left(&self) -> Vec<f64> {
        let n = self.left.len();
        let mut g = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..=i {
                let c = f64::from(self.common_neighbors(i, j));
                g[i * n + j] = c;
                g[j * n + i] = c;
            }
        }
        g
    }

    /// `|E(S, T)|` for `S` on the left and `T` on the right.
    pub fn edges_between(&self, s: &[usize], t: &[usize]) -> Result<u64> {
        let mut in_t = vec![false; self.right.len()];
        for &r in t {
            *in_t.get_mut(r).ok_or(Error::VertexOutOfRange { index: r, len: self.right.len() })? = true;
        }
        let mut count = 0;
        for &l in s {
            let list = self.incidence.get(l).ok_or(Error::VertexOutOfRange { index: l, len: self.left.len() })?;
            count += list.iter().filter(|&&r| in_t[r as usize]).count() as u64;
        }
        Ok(count)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle() {
        let g = LabeledGraph::from_predicate(vec![0, 1, 2], |_, _| true);
        assert_eq!(g.regular_degree(), Some(2));
        assert_eq!(g.edge_count(), 3);
        assert!(g.is_well_formed());
        assert_eq!(g.edges_between(&[0, 1, 2], &[0, 1, 2]).unwrap(), 6);
    }

    #[test]
    fn edges_validation() {
        assert!(LabeledGraph::from_edges(vec![(); 2], [(0, 0)]).is_err());
        assert!(LabeledGraph::from_edges(vec![(); 2], [(0, 2)]).is_err());
        let g = LabeledGraph::from_edges(vec![(); 3], [(0, 1), (1, 0)]).unwrap();
        assert_eq!(g.edge_count(), 1);
        assert_eq!(g.regular_degree(), None);
    }
}
