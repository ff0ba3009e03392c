use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::outcome::{Measurement, Outcome};
use crate::error::{Error, Result};
use crate::gf2::{enumerate_isotropic, GF2Vector, MAX_ENUM_QUBITS};

/// Index over the maximal measurements `ℒⁿ_n` and the directions `ℒⁿ_1`.
///
/// Over Z₂ every one-dimensional subspace has a single nonzero vector, so
/// directions are identified with nonzero vectors: direction `d` is the
/// vector with packed bits `d + 1`. For every measurement the value of each
/// of its `2ⁿ` outcomes on each contained direction is tabulated, which turns
/// consistency tests into bit comparisons.
#[derive(Clone, Debug)]
pub struct MaximalSystem {
    n: usize,
    maximal: Vec<Measurement>,
    index: BTreeMap<Measurement, u32>,
    contained: Vec<Vec<u16>>,
    above: Vec<Vec<u32>>,
    values: Vec<Vec<u16>>,
}

/// Ordered pairs of measurements together with the positions of their
/// shared directions inside each one's `contained` list.
#[derive(Clone, Debug)]
pub struct PairTable {
    pub pairs: Vec<(u32, u32)>,
    stride: usize,
    common: Vec<(u8, u8)>,
}

impl PairTable {
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Shared-direction positions of pair `p`.
    #[inline]
    pub fn common(&self, p: usize) -> &[(u8, u8)] {
        &self.common[p * self.stride..(p + 1) * self.stride]
    }

    /// Number of shared nonzero vectors per pair, `2^{dim ∩} − 1`.
    pub fn shared(&self) -> usize {
        self.stride
    }
}

impl MaximalSystem {
    pub fn new(n: usize) -> Result<Self> {
        if n > MAX_ENUM_QUBITS {
            return Err(Error::Capacity { what: "qubits for the maximal system", value: n as u64, limit: MAX_ENUM_QUBITS as u64 });
        }
        let maximal = enumerate_isotropic(n, n)?;
        let index = maximal.iter().enumerate().map(|(i, m)| (m.clone(), i as u32)).collect();
        let dirs = (1usize << (2 * n)) - 1;
        let mut above = alloc::vec![Vec::new(); dirs];
        let mut contained = Vec::with_capacity(maximal.len());
        let mut values = Vec::with_capacity(maximal.len());
        for (xi, x) in maximal.iter().enumerate() {
            let mut vs: Vec<u64> = x.vectors()?.map(|v| v.bits()).filter(|&b| b != 0).collect();
            vs.sort_unstable();
            for &b in &vs {
                above[b as usize - 1].push(xi as u32);
            }
            let mut table = Vec::with_capacity(1 << n);
            for o in 0..1u32 << n {
                let out = Outcome::new(x.clone(), o)?;
                let mut mask = 0u16;
                for (j, &b) in vs.iter().enumerate() {
                    if out.eval_bits(b).expect("vector of x") {
                        mask |= 1 << j;
                    }
                }
                table.push(mask);
            }
            values.push(table);
            contained.push(vs.into_iter().map(|b| (b - 1) as u16).collect());
        }
        Ok(Self { n, maximal, index, contained, above, values })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of maximal measurements.
    pub fn len(&self) -> usize {
        self.maximal.len()
    }

    pub fn is_empty(&self) -> bool {
        self.maximal.is_empty()
    }

    pub fn maximal(&self) -> &[Measurement] {
        &self.maximal
    }

    pub fn measurement(&self, x: usize) -> &Measurement {
        &self.maximal[x]
    }

    pub fn index_of(&self, m: &Measurement) -> Option<usize> {
        self.index.get(m).map(|&i| i as usize)
    }

    pub fn direction_count(&self) -> usize {
        self.above.len()
    }

    pub fn direction_vector(&self, d: usize) -> GF2Vector {
        GF2Vector::new(self.n, d as u64 + 1).expect("direction id in range")
    }

    pub fn direction_of(&self, v: &GF2Vector) -> Option<usize> {
        (v.n() == self.n && !v.is_zero()).then(|| v.bits() as usize - 1)
    }

    /// Directions contained in measurement `x`, ascending.
    pub fn contained(&self, x: usize) -> &[u16] {
        &self.contained[x]
    }

    /// Measurements above direction `d`, ascending.
    pub fn above(&self, d: usize) -> &[u32] {
        &self.above[d]
    }

    /// Outcomes per maximal measurement, `2ⁿ`.
    pub fn outcome_count(&self) -> usize {
        1 << self.n
    }

    /// Values of outcome `o` of `x` on `contained(x)`, bit `j` for entry `j`.
    #[inline]
    pub fn value_bits(&self, x: usize, o: usize) -> u16 {
        self.values[x][o]
    }

    /// Value of outcome `o` of `x` at direction `d`, if `d ≤ x`.
    pub fn value(&self, x: usize, o: usize, d: usize) -> Option<bool> {
        let p = self.contained[x].binary_search(&(d as u16)).ok()?;
        Some(self.values[x][o] >> p & 1 == 1)
    }

    pub fn outcome(&self, x: usize, o: usize) -> Outcome {
        Outcome::new(self.maximal[x].clone(), o as u32).expect("outcome index below 2^n")
    }

    /// Positions of shared directions in `contained(x)` and `contained(y)`.
    pub fn common_positions(&self, x: usize, y: usize, out: &mut Vec<(u8, u8)>) {
        out.clear();
        let (a, b) = (&self.contained[x], &self.contained[y]);
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                core::cmp::Ordering::Less => i += 1,
                core::cmp::Ordering::Greater => j += 1,
                core::cmp::Ordering::Equal => {
                    out.push((i as u8, j as u8));
                    i += 1;
                    j += 1;
                }
            }
        }
    }

    fn shared_count(&self, x: usize, y: usize) -> usize {
        let (a, b) = (&self.contained[x], &self.contained[y]);
        let (mut i, mut j, mut c) = (0, 0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                core::cmp::Ordering::Less => i += 1,
                core::cmp::Ordering::Greater => j += 1,
                core::cmp::Ordering::Equal => {
                    c += 1;
                    i += 1;
                    j += 1;
                }
            }
        }
        c
    }

    /// `n − dim(x ∩ y)`.
    pub fn distance(&self, x: usize, y: usize) -> usize {
        let shared = self.shared_count(x, y) + 1;
        self.n - shared.trailing_zeros() as usize
    }

    /// Whether outcome `a` of `x` and `b` of `y` agree on `x ∩ y`.
    pub fn consistent(&self, x: usize, a: usize, y: usize, b: usize) -> bool {
        if x == y {
            return a == b;
        }
        let mut buf = Vec::with_capacity(15);
        self.common_positions(x, y, &mut buf);
        agree_on(self.values[x][a], self.values[y][b], &buf)
    }

    /// All ordered pairs `(x, y)` with `d(x, y) = d`, `x ≠ y`, sorted.
    pub fn pairs_at_distance(&self, d: usize) -> Result<PairTable> {
        if d == 0 || d > self.n {
            return Err(Error::InvalidArgument(alloc::format!("distance {d} outside 1..={}", self.n)));
        }
        let stride = (1usize << (self.n - d)) - 1;
        let mut pairs = Vec::new();
        let mut common = Vec::new();
        let mut buf = Vec::with_capacity(15);
        for x in 0..self.len() {
            for y in 0..self.len() {
                if x == y || self.shared_count(x, y) != stride {
                    continue;
                }
                self.common_positions(x, y, &mut buf);
                pairs.push((x as u32, y as u32));
                common.extend_from_slice(&buf);
            }
        }
        Ok(PairTable { pairs, stride, common })
    }
}

/// Compares two value masks at paired positions.
#[inline]
pub(crate) fn agree_on(vx: u16, vy: u16, common: &[(u8, u8)]) -> bool {
    common.iter().all(|&(i, j)| (vx >> i & 1) == (vy >> j & 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn n2_structure() {
        let s = MaximalSystem::new(2).unwrap();
        assert_eq!(s.len(), 15);
        assert_eq!(s.direction_count(), 15);
        for d in 0..15 {
            assert_eq!(s.above(d).len(), 3);
        }
        for x in 0..15 {
            assert_eq!(s.contained(x).len(), 3);
        }
        let t = s.pairs_at_distance(1).unwrap();
        assert_eq!(t.len(), 90);
        assert_eq!(t.shared(), 1);
    }

    #[test]
    fn tabulated_values_match_outcomes() {
        let s = MaximalSystem::new(2).unwrap();
        for x in 0..s.len() {
            for o in 0..4 {
                let out = s.outcome(x, o);
                for &d in s.contained(x) {
                    let v = s.direction_vector(d as usize);
                    assert_eq!(s.value(x, o, d as usize), Some(out.eval(&v).unwrap()));
                }
            }
        }
    }

    #[test]
    fn consistency_matches_outcome_api() {
        let s = MaximalSystem::new(2).unwrap();
        for x in 0..s.len() {
            for y in 0..s.len() {
                for a in 0..4 {
                    for b in 0..4 {
                        let want = s.outcome(x, a).consistent(&s.outcome(y, b)).unwrap();
                        assert_eq!(s.consistent(x, a, y, b), want);
                    }
                }
            }
        }
    }
}
