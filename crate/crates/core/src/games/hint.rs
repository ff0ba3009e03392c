//! Transfer of half-distance questions to repeated two-qubit questions.
//!
//! For maximal `x, y` with `dim(x ∩ y) = n/2` a symplectic map `φ` is built
//! that sends `x` to `⊕ⱼ span{Z₂ⱼ, Z₂ⱼ₊₁}` and `y` to `⊕ⱼ span{Z₂ⱼ, X₂ⱼ₊₁}`,
//! so block `j` (qubits `2j, 2j+1`) is the canonical two-qubit question pair
//! with one shared direction. Answers for the blocks are pulled back with the
//! sign function `σ` of a Clifford realizing `φ`,
//! `U C(v) U† = (−1)^{σ(v)} C(φv)`, which makes `v ↦ a(φv) + σ(v)` an outcome
//! of `x` whenever `a` is an outcome of `φ(x)`. Since `σ` depends on `v`
//! alone, pulled-back answers agree on `x ∩ y` exactly when the block
//! answers agree on `φ(x) ∩ φ(y)`.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::gf2::rowreduce::solve;
use crate::gf2::symplectic::symplectic_solve;
use crate::gf2::{GF2Vector, IsotropicSubspace, Subspace};
use crate::lattice::{MaximalSystem, Measurement};

/// A linear map of Z₂²ⁿ given by the images of the packed basis bits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymplecticMap {
    n: usize,
    images: Vec<u64>,
}

/// Exponent `c` (mod 4) in `C(u)C(v) = i^c C(u + v)` for conventional-phase
/// Paulis `C(v) = i^{x·z} XˣZᶻ`.
fn product_exponent(u: u64, v: u64, n: u32) -> i32 {
    let m = (1u64 << n) - 1;
    let par = |t: u64| (t.count_ones() & 1) as i32;
    let p = |t: u64| par((t >> n) & t & m);
    let cross = par(u & m & (v >> n));
    (p(u) + p(v) - p(u ^ v) + 2 * cross).rem_euclid(4)
}

impl SymplecticMap {
    pub fn identity(n: usize) -> Self {
        Self { n, images: (0..2 * n).map(|b| 1u64 << b).collect() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    fn apply_bits(&self, v: u64) -> u64 {
        let mut out = 0;
        let mut rest = v;
        while rest != 0 {
            let b = rest.trailing_zeros();
            out ^= self.images[b as usize];
            rest &= rest - 1;
        }
        out
    }

    pub fn apply(&self, v: &GF2Vector) -> GF2Vector {
        GF2Vector::new(self.n, self.apply_bits(v.bits())).expect("image lies in the space")
    }

    pub fn apply_subspace(&self, s: &Subspace) -> Result<Subspace> {
        Subspace::span(self.n, s.basis().map(|b| self.apply(&b)))
    }

    /// Whether every pair of basis images keeps its symplectic product.
    pub fn is_symplectic(&self) -> bool {
        let n = self.n;
        let form = |a: u64, b: u64| GF2Vector::new(n, a).and_then(|a| a.symplectic(&GF2Vector::new(n, b)?)).expect("in range");
        (0..2 * n).all(|i| (0..2 * n).all(|j| form(self.images[i], self.images[j]) == form(1 << i, 1 << j)))
    }

    /// `σ(v)`, with `σ = 0` on the packed basis vectors.
    pub fn sign(&self, v: &GF2Vector) -> bool {
        let n = self.n as u32;
        let (mut s, mut img, mut sigma) = (0u64, 0u64, 0i32);
        let mut rest = v.bits();
        while rest != 0 {
            let b = 1u64 << rest.trailing_zeros();
            let ib = self.apply_bits(b);
            let d = product_exponent(img, ib, n) - product_exponent(s, b, n);
            debug_assert!(d.rem_euclid(2) == 0, "symplectic maps keep commutation");
            sigma += d.rem_euclid(4) / 2;
            s ^= b;
            img ^= ib;
            rest &= rest - 1;
        }
        sigma % 2 == 1
    }
}

fn canonical_rows(n: usize, bob: bool) -> Result<Vec<GF2Vector>> {
    let mut rows = Vec::with_capacity(n);
    for j in 0..n / 2 {
        rows.push(GF2Vector::z_on(n, 2 * j)?);
        rows.push(if bob { GF2Vector::x_on(n, 2 * j + 1)? } else { GF2Vector::z_on(n, 2 * j + 1)? });
    }
    Ok(rows)
}

/// The product-form question pair on `n` qubits.
pub fn canonical_pair(n: usize) -> Result<(Measurement, Measurement)> {
    if n == 0 || n % 2 == 1 {
        return Err(Error::OddQubitCount(n));
    }
    Ok((IsotropicSubspace::span(n, canonical_rows(n, false)?)?, IsotropicSubspace::span(n, canonical_rows(n, true)?)?))
}

/// Qubits `2j, 2j+1` of `v` as a two-qubit vector.
pub fn block_vector(v: &GF2Vector, j: usize) -> GF2Vector {
    let n = v.n();
    let bit = |q: usize, x: bool| v.bits() >> ((n - 1 - q) + if x { n } else { 0 }) & 1;
    let x = bit(2 * j, true) << 1 | bit(2 * j + 1, true);
    let z = bit(2 * j, false) << 1 | bit(2 * j + 1, false);
    GF2Vector::from_parts(2, x, z).expect("two-qubit block")
}

fn embed_block(v: &GF2Vector, j: usize, n: usize) -> GF2Vector {
    let (x, z) = (v.bits() >> 2, v.bits() & 3);
    let shift = n - 2 - 2 * j;
    GF2Vector::from_parts(n, x << shift, z << shift).expect("block fits")
}

fn complement_in(s: &Subspace, base: &[GF2Vector], n: usize) -> Result<Vec<GF2Vector>> {
    let mut chosen: Vec<GF2Vector> = base.to_vec();
    let mut out = Vec::new();
    for b in s.basis() {
        if !Subspace::span(n, chosen.iter().copied())?.contains(&b) {
            chosen.push(b);
            out.push(b);
        }
    }
    Ok(out)
}

/// The hint for one half-distance question pair.
#[derive(Clone, Debug)]
pub struct Hint {
    pub map: SymplecticMap,
    pub x: usize,
    pub y: usize,
    /// Block questions, as measurement indices of the two-qubit system.
    pub alice_blocks: Vec<u32>,
    pub bob_blocks: Vec<u32>,
    /// `φ(x)` and `φ(y)` are exactly the products of their blocks.
    pub product_form: bool,
}

/// Builds the canonical hint for measurements `x, y` of `system` at
/// distance `n/2`; `block` is the two-qubit system.
pub fn hint_transfer(system: &MaximalSystem, block: &MaximalSystem, x: usize, y: usize) -> Result<Hint> {
    let n = system.n();
    if n % 2 == 1 {
        return Err(Error::OddQubitCount(n));
    }
    if block.n() != 2 {
        return Err(Error::InvalidArgument("block system must have two qubits".into()));
    }
    let m = n / 2;
    if system.distance(x, y) != m {
        return Err(Error::InvalidArgument(alloc::format!("d(x, y) = {} ≠ {m}", system.distance(x, y))));
    }
    let (xs, ys) = (system.measurement(x), system.measurement(y));
    let (cx, cy) = canonical_pair(n)?;
    let map = if *xs == cx && *ys == cy { SymplecticMap::identity(n) } else { adapted_map(xs, ys)? };
    let mut alice_blocks = Vec::with_capacity(m);
    let mut bob_blocks = Vec::with_capacity(m);
    let mut product_form = true;
    for (s, out) in [(xs, &mut alice_blocks), (ys, &mut bob_blocks)] {
        let image = map.apply_subspace(s.as_subspace())?;
        let mut embedded = Vec::new();
        for j in 0..m {
            let b = IsotropicSubspace::span(2, image.basis().map(|v| block_vector(&v, j)))?;
            embedded.extend(b.basis().map(|v| embed_block(&v, j, n)));
            match block.index_of(&b) {
                Some(i) => out.push(i as u32),
                None => {
                    product_form = false;
                    out.push(u32::MAX);
                }
            }
        }
        product_form &= Subspace::span(n, embedded)? == image;
    }
    Ok(Hint { map, x, y, alice_blocks, bob_blocks, product_form })
}

fn adapted_map(x: &Measurement, y: &Measurement) -> Result<SymplecticMap> {
    let n = x.n();
    let m = n / 2;
    let form = |a: &GF2Vector, b: &GF2Vector| a.symplectic_unchecked(b);
    let inter = x.intersect(y)?;
    let u: Vec<GF2Vector> = inter.basis().collect();
    let p = complement_in(x.as_subspace(), &u, n)?;
    let r = complement_in(y.as_subspace(), &u, n)?;
    if u.len() != m || p.len() != m || r.len() != m {
        return Err(Error::InvalidArgument("questions are not at half distance".into()));
    }
    let mut q = Vec::with_capacity(m);
    for j in 0..m {
        let rows: Vec<(u128, bool)> = (0..m)
            .map(|i| ((0..m).fold(0u128, |acc, k| acc | (u128::from(form(&p[i], &r[k])) << k)), i == j))
            .collect();
        let c = solve(&rows, m as u32).ok_or(Error::InvalidArgument("x/I and y/I are not dually paired".into()))?;
        let qj = (0..m).filter(|&k| c >> k & 1 == 1).fold(0u64, |acc, k| acc ^ r[k].bits());
        q.push(GF2Vector::new(n, qj)?);
    }
    let mut g: Vec<GF2Vector> = Vec::with_capacity(m);
    for j in 0..m {
        let mut targets: Vec<(u64, bool)> = u.iter().enumerate().map(|(i, v)| (v.bits(), i == j)).collect();
        targets.extend(p.iter().chain(&q).chain(&g).map(|v| (v.bits(), false)));
        let gj = symplectic_solve(n, &targets).ok_or(Error::InvalidArgument("no symplectic partner".into()))?;
        g.push(GF2Vector::new(n, gj)?);
    }
    let zq = |q: usize| GF2Vector::z_on(n, q).map(|v| v.bits());
    let xq = |q: usize| GF2Vector::x_on(n, q).map(|v| v.bits());
    let mut images = Vec::with_capacity(2 * n);
    for b in 0..2 * n {
        let e = GF2Vector::new(n, 1 << b)?;
        let mut img = 0u64;
        for j in 0..m {
            if form(&e, &g[j]) {
                img ^= zq(2 * j)?;
            }
            if form(&e, &u[j]) {
                img ^= xq(2 * j)?;
            }
            if form(&e, &q[j]) {
                img ^= zq(2 * j + 1)?;
            }
            if form(&e, &p[j]) {
                img ^= xq(2 * j + 1)?;
            }
        }
        images.push(img);
    }
    Ok(SymplecticMap { n, images })
}

impl Hint {
    /// Alice's outcome index on `x` pulled back from block answers.
    pub fn pull_back_alice(&self, system: &MaximalSystem, block: &MaximalSystem, answers: &[u16]) -> Result<u16> {
        self.pull_back(system, block, self.x, &self.alice_blocks, answers)
    }

    pub fn pull_back_bob(&self, system: &MaximalSystem, block: &MaximalSystem, answers: &[u16]) -> Result<u16> {
        self.pull_back(system, block, self.y, &self.bob_blocks, answers)
    }

    fn pull_back(&self, system: &MaximalSystem, block: &MaximalSystem, x: usize, blocks: &[u32], answers: &[u16]) -> Result<u16> {
        if !self.product_form || answers.len() != blocks.len() {
            return Err(Error::InvalidArgument("answers do not match the block questions".into()));
        }
        let mut mask = 0u16;
        for (pos, &d) in system.contained(x).iter().enumerate() {
            let v = system.direction_vector(usize::from(d));
            let image = self.map.apply(&v);
            let mut bit = self.map.sign(&v);
            for (j, (&bq, &a)) in blocks.iter().zip(answers).enumerate() {
                let bv = block_vector(&image, j);
                if let Some(bd) = block.direction_of(&bv) {
                    bit ^= block.value(bq as usize, usize::from(a), bd).ok_or(Error::NotBelow)?;
                }
            }
            if bit {
                mask |= 1 << pos;
            }
        }
        (0..system.outcome_count())
            .find(|&o| system.value_bits(x, o) == mask)
            .map(|o| o as u16)
            .ok_or(Error::InvalidArgument("pulled-back values are not an outcome".into()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn two_qubit_canonical_is_identity() {
        let sys = MaximalSystem::new(2).unwrap();
        let (cx, cy) = canonical_pair(2).unwrap();
        let (x, y) = (sys.index_of(&cx).unwrap(), sys.index_of(&cy).unwrap());
        let h = hint_transfer(&sys, &sys, x, y).unwrap();
        assert_eq!(h.map, SymplecticMap::identity(2));
        assert_eq!((h.alice_blocks[0], h.bob_blocks[0]), (x as u32, y as u32));
        let pairs = sys.pairs_at_distance(1).unwrap();
        for &(a, b) in &pairs.pairs {
            let h = hint_transfer(&sys, &sys, a as usize, b as usize).unwrap();
            assert!(h.product_form && h.map.is_symplectic());
            assert_eq!((h.alice_blocks[0], h.bob_blocks[0]), (x as u32, y as u32));
        }
    }

    #[test]
    fn sign_is_a_cocycle() {
        let sys = MaximalSystem::new(4).unwrap();
        let block = MaximalSystem::new(2).unwrap();
        let pairs = sys.pairs_at_distance(2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..20 {
            let (x, y) = pairs.pairs[rng.gen_range(0..pairs.len())];
            let h = hint_transfer(&sys, &block, x as usize, y as usize).unwrap();
            for _ in 0..200 {
                let u = GF2Vector::new(4, rng.gen_range(0..256)).unwrap();
                let v = GF2Vector::new(4, rng.gen_range(0..256)).unwrap();
                let (pu, pv) = (h.map.apply(&u), h.map.apply(&v));
                let lhs = 2 * i32::from(h.map.sign(&u.checked_add(&v).unwrap()));
                let rhs = 2 * i32::from(h.map.sign(&u)) + 2 * i32::from(h.map.sign(&v)) + product_exponent(pu.bits(), pv.bits(), 4)
                    - product_exponent(u.bits(), v.bits(), 4);
                assert_eq!(lhs.rem_euclid(4), rhs.rem_euclid(4));
            }
        }
    }
}
