//! Dual polar graphs `Cⁱ_m(2)`: vertices are the maximal isotropic
//! subspaces of a `2m`-dimensional symplectic space, joined at distance `i`.
//!
//! Closed forms cover the cases used downstream: the full spectrum of `C¹_m`,
//! the valencies `P_{0,i}`, and the half-distance eigenvalue for odd `m`.
//! Everything else is obtained from the distance-regular structure measured
//! on an explicit vertex set (see [`DistanceScheme`]).

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::lattice::counting::{pow2_choose2, qbinomial};
use crate::lattice::MaximalSystem;

fn q1(k: u32) -> i128 {
    (1i128 << k) - 1
}

/// Eigenvalue `θ_k = 2[m−k choose 1]₂ − [k choose 1]₂` of `C¹_m(2)`.
pub fn c1_eigenvalue(m: u32, k: u32) -> Result<i128> {
    if k > m || m > 60 {
        return Err(Error::InvalidArgument(alloc::format!("index k = {k} outside 0..={m}")));
    }
    Ok(2 * q1(m - k) - q1(k))
}

/// Valency of `Cⁱ_m(2)`: `[m choose i]₂ · 2^{C(i+1, 2)}`.
pub fn valency(m: u32, i: u32) -> BigUint {
    qbinomial(u64::from(m), u64::from(i)) * pow2_choose2(u64::from(i) + 1)
}

/// The half-distance eigenvalue `(−1)^i [m choose i]₂ 2^{C(i,2)}` for odd `m`
/// and `i = (m+1)/2`, whose absolute value is the spectral parameter.
pub fn half_eigenvalue(m: u32) -> Result<BigInt> {
    if m.is_multiple_of(2) {
        return Err(Error::Unsupported(alloc::format!("half-distance closed form needs odd m, got {m}")));
    }
    let i = m.div_ceil(2);
    let mag = BigInt::from(qbinomial(u64::from(m), u64::from(i)) * pow2_choose2(u64::from(i)));
    Ok(if i % 2 == 1 { -mag } else { mag })
}

/// Shipped closed-form data for `Cⁱ_m(2)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualPolarClosedForm {
    pub m: u32,
    pub i: u32,
    pub max: BigUint,
    /// Spectral parameter (largest non-trivial absolute eigenvalue).
    pub lambda: BigUint,
    /// Distinct eigenvalues, when the full set is available in closed form.
    pub values: Option<Vec<i128>>,
}

/// Closed forms for `i = 1` or `i = (m+1)/2` with `m` odd.
pub fn dual_polar_eigenvalues(m: u32, i: u32) -> Result<DualPolarClosedForm> {
    if m == 0 || m > 30 {
        return Err(Error::InvalidArgument(alloc::format!("rank m = {m} outside 1..=30")));
    }
    let max = valency(m, i);
    if i == 1 {
        let values: Vec<i128> = (0..=m).map(|k| c1_eigenvalue(m, k)).collect::<Result<_>>()?;
        let mut abs: Vec<u128> = values.iter().skip(1).map(|v| v.unsigned_abs()).collect();
        abs.sort_unstable();
        let lambda = BigUint::from(abs.last().copied().unwrap_or(0));
        return Ok(DualPolarClosedForm { m, i, max, lambda, values: Some(values) });
    }
    if m % 2 == 1 && i == m.div_ceil(2) {
        let lambda = half_eigenvalue(m)?.magnitude().clone();
        return Ok(DualPolarClosedForm { m, i, max, lambda, values: None });
    }
    Err(Error::Unsupported(alloc::format!("no closed form shipped for C^{i}_{m}(2)")))
}

/// Intersection numbers of a distance-regular graph measured on an explicit
/// vertex set, with `A₁` the distance-one relation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceScheme {
    pub diameter: usize,
    pub order: usize,
    /// `k_j`: number of vertices at distance `j` from any vertex.
    pub valencies: Vec<u64>,
    /// `a_j, b_j, c_j` of the standard intersection array.
    pub a: Vec<u64>,
    pub b: Vec<u64>,
    pub c: Vec<u64>,
}

/// One eigenspace of the scheme: `P_{h,j}` for every distance `j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchemeEigenspace {
    pub h: usize,
    pub theta: i128,
    pub p: Vec<i128>,
    pub multiplicity: u64,
}

/// Distance matrix (row-major `u8`) among maximal measurements.
pub fn distance_matrix(system: &MaximalSystem, vertices: &[u32]) -> Vec<u8> {
    let n = vertices.len();
    let mut d = vec![0u8; n * n];
    for i in 0..n {
        for j in i + 1..n {
            let v = system.distance(vertices[i] as usize, vertices[j] as usize) as u8;
            d[i * n + j] = v;
            d[j * n + i] = v;
        }
    }
    d
}

impl DistanceScheme {
    /// Measures intersection numbers and checks they are constant.
    pub fn measure(dist: &[u8], order: usize) -> Result<Self> {
        if dist.len() != order * order || order == 0 {
            return Err(Error::DimensionMismatch { left: dist.len(), right: order * order });
        }
        let diameter = usize::from(dist.iter().copied().max().unwrap_or(0));
        let mut valencies: Vec<Option<u64>> = vec![None; diameter + 1];
        let mut a: Vec<Option<u64>> = vec![None; diameter + 1];
        let mut b: Vec<Option<u64>> = vec![None; diameter + 1];
        let mut c: Vec<Option<u64>> = vec![None; diameter + 1];
        let set = |slot: &mut Option<u64>, v: u64| -> Result<()> {
            match *slot {
                Some(old) if old != v => Err(Error::Irregular),
                _ => {
                    *slot = Some(v);
                    Ok(())
                }
            }
        };
        let neighbors: Vec<Vec<usize>> =
            (0..order).map(|x| (0..order).filter(|&z| dist[x * order + z] == 1).collect()).collect();
        for x in 0..order {
            let row = &dist[x * order..(x + 1) * order];
            let mut k = vec![0u64; diameter + 1];
            for &d in row {
                k[usize::from(d)] += 1;
            }
            for (j, &kj) in k.iter().enumerate() {
                set(&mut valencies[j], kj)?;
            }
            for y in 0..order {
                let j = usize::from(row[y]);
                let (mut cc, mut aa, mut bb) = (0u64, 0u64, 0u64);
                for &z in &neighbors[y] {
                    match usize::from(row[z]) {
                        d if d + 1 == j => cc += 1,
                        d if d == j => aa += 1,
                        d if d == j + 1 => bb += 1,
                        _ => return Err(Error::Irregular),
                    }
                }
                set(&mut c[j], cc)?;
                set(&mut a[j], aa)?;
                set(&mut b[j], bb)?;
            }
        }
        let unwrap = |v: Vec<Option<u64>>| v.into_iter().map(|x| x.unwrap_or(0)).collect();
        Ok(Self { diameter, order, valencies: unwrap(valencies), a: unwrap(a), b: unwrap(b), c: unwrap(c) })
    }

    /// Measures the scheme on the given maximal measurements.
    pub fn of_measurements(system: &MaximalSystem, vertices: &[u32]) -> Result<Self> {
        Self::measure(&distance_matrix(system, vertices), vertices.len())
    }

    /// `[v₀(θ), …, v_D(θ)]` from `A₁A_j = b_{j−1}A_{j−1} + a_jA_j + c_{j+1}A_{j+1}`,
    /// together with the terminating residual `(θ − a_D)v_D − b_{D−1}v_{D−1}`.
    pub fn column(&self, theta: i128) -> Result<(Vec<i128>, i128)> {
        let d = self.diameter;
        let mut v = vec![1i128];
        if d >= 1 {
            v.push(theta);
        }
        for j in 1..d {
            let prev = v[j - 1];
            let num = theta * v[j] - self.a[j] as i128 * v[j] - self.b[j - 1] as i128 * prev;
            let den = self.c[j + 1] as i128;
            if den == 0 || num % den != 0 {
                return Err(Error::InvalidArgument(alloc::format!("non-integral recurrence at θ = {theta}")));
            }
            v.push(num / den);
        }
        let residual = if d == 0 {
            theta
        } else {
            (theta - self.a[d] as i128) * v[d] - self.b[d - 1] as i128 * v[d - 1]
        };
        Ok((v, residual))
    }

    /// Multiplicity `N / Σ_j v_j(θ)²/k_j`, exact.
    pub fn multiplicity(&self, column: &[i128]) -> Result<u64> {
        let mut s = BigRational::zero();
        for (j, &v) in column.iter().enumerate() {
            s += BigRational::new(BigInt::from(v) * BigInt::from(v), BigInt::from(self.valencies[j]));
        }
        if s.is_zero() {
            return Err(Error::InvalidArgument("degenerate eigenvector norm".into()));
        }
        let m = BigRational::from_integer(BigInt::from(self.order)) / s;
        if !m.is_integer() {
            return Err(Error::InvalidArgument(alloc::format!("non-integral multiplicity {m}")));
        }
        m.to_integer().to_u64().ok_or(Error::InvalidArgument("multiplicity overflow".into()))
    }

    /// Eigenspaces for the closed-form `θ_h` of `C¹_m(2)` with `m = diameter`.
    /// Fails if any closed-form value is not a root of the recurrence.
    pub fn dual_polar_eigenspaces(&self) -> Result<Vec<SchemeEigenspace>> {
        let m = self.diameter as u32;
        let mut out = Vec::new();
        for h in 0..=m {
            let theta = c1_eigenvalue(m, h)?;
            let (p, residual) = self.column(theta)?;
            if residual != 0 {
                return Err(Error::InvalidArgument(alloc::format!("θ_{h} = {theta} is not an eigenvalue")));
            }
            let multiplicity = self.multiplicity(&p)?;
            out.push(SchemeEigenspace { h: h as usize, theta, p, multiplicity });
        }
        let total: u64 = out.iter().map(|e| e.multiplicity).sum();
        if total != self.order as u64 {
            return Err(Error::InvalidArgument(alloc::format!("multiplicities sum to {total}, not {}", self.order)));
        }
        Ok(out)
    }
}

/// Expands `(value, multiplicity)` pairs into a sorted descending list.
pub fn expand_multiset(pairs: &[(i128, u64)]) -> Vec<f64> {
    let mut v: Vec<f64> = pairs.iter().flat_map(|&(x, m)| core::iter::repeat_n(x as f64, m as usize)).collect();
    v.sort_by(|a, b| b.partial_cmp(a).unwrap_or(core::cmp::Ordering::Equal));
    v
}

/// Spectrum of `Σ_j coeff_j A_j` as `(value, multiplicity)`, merged.
pub fn combined_spectrum(spaces: &[SchemeEigenspace], coeff: &[i128]) -> Vec<(i128, u64)> {
    let mut out: Vec<(i128, u64)> = Vec::new();
    for e in spaces {
        let value: i128 = e.p.iter().zip(coeff).map(|(p, c)| p * c).sum();
        match out.iter_mut().find(|(v, _)| *v == value) {
            Some(slot) => slot.1 += e.multiplicity,
            None => out.push((value, e.multiplicity)),
        }
    }
    out.sort_by_key(|e| core::cmp::Reverse(e.0));
    out
}

/// Lossy conversion for reporting.
pub fn big_to_f64(v: &BigUint) -> f64 {
    v.to_f64().unwrap_or(f64::INFINITY)
}

pub(crate) fn unit_coefficients(diameter: usize, j: usize) -> Vec<i128> {
    (0..=diameter).map(|i| i128::from(i == j)).collect()
}

pub(crate) fn q_choose2_coefficients(n: u32) -> Vec<i128> {
    (0..=n).map(|i| qbinomial(u64::from(n - i), 2).to_i128().unwrap_or(0)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn c1_values() {
        assert_eq!(c1_eigenvalue(3, 0).unwrap(), 14);
        assert_eq!(c1_eigenvalue(3, 1).unwrap(), 5);
        assert_eq!(c1_eigenvalue(3, 3).unwrap(), -7);
        let f = dual_polar_eigenvalues(3, 1).unwrap();
        assert_eq!(f.max, BigUint::from(14u32));
        assert_eq!(f.lambda, BigUint::from(7u32));
    }

    #[test]
    fn half_values() {
        assert_eq!(half_eigenvalue(1).unwrap(), BigInt::from(-1));
        assert_eq!(half_eigenvalue(3).unwrap(), BigInt::from(14));
        let f = dual_polar_eigenvalues(3, 2).unwrap();
        assert_eq!(f.max, BigUint::from(56u32));
        assert_eq!(f.lambda, BigUint::from(14u32));
        assert!(matches!(dual_polar_eigenvalues(4, 2), Err(Error::Unsupported(_))));
        assert!(matches!(dual_polar_eigenvalues(3, 3), Err(Error::Unsupported(_))));
    }

    #[test]
    fn scheme_on_two_qubits() {
        let sys = MaximalSystem::new(2).unwrap();
        let all: Vec<u32> = (0..sys.len() as u32).collect();
        let s = DistanceScheme::of_measurements(&sys, &all).unwrap();
        assert_eq!(s.valencies, vec![1, 6, 8]);
        let spaces = s.dual_polar_eigenspaces().unwrap();
        let mults: Vec<u64> = spaces.iter().map(|e| e.multiplicity).collect();
        assert_eq!(mults.iter().sum::<u64>(), 15);
        for e in &spaces {
            assert_eq!(e.p[0], 1);
        }
        assert_eq!(spaces[0].p, vec![1, 6, 8]);
    }
}
