//! Numeric spectra of the measurement graphs compared against the
//! multisets predicted by the dual polar scheme.

use alloc::vec::Vec;

use num_traits::ToPrimitive;

use super::builders::{build_b_n2, build_gw, build_gw_prime, default_direction};
use super::dual_polar::{
    combined_spectrum, distance_matrix, dual_polar_eigenvalues, expand_multiset, half_eigenvalue, q_choose2_coefficients,
    unit_coefficients, valency, DistanceScheme,
};
use super::spectrum::{spectrum, symmetric_spectrum, SpectrumReport};
use crate::error::{Error, Result};
use crate::lattice::counting::qbinomial;
use crate::lattice::MaximalSystem;
#[allow(unused_imports)]
use num_traits::Float;

/// A numeric spectrum next to its predicted multiset.
#[derive(Clone, Debug)]
pub struct SpectralCheck {
    pub n: usize,
    pub numeric: SpectrumReport,
    /// Predicted `(eigenvalue, multiplicity)`, descending.
    pub expected: Vec<(i128, u64)>,
    pub max_deviation: f64,
    pub matches: bool,
}

fn compare(n: usize, numeric: SpectrumReport, expected: Vec<(i128, u64)>) -> SpectralCheck {
    let want = expand_multiset(&expected);
    let (max_deviation, matches) = if want.len() == numeric.eigenvalues.len() {
        let dev = want.iter().zip(&numeric.eigenvalues).map(|(a, b)| (a - b).abs() / a.abs().max(1.0)).fold(0.0, f64::max);
        (dev, dev <= 1e-6)
    } else {
        (f64::INFINITY, false)
    };
    SpectralCheck { n, numeric, expected, max_deviation, matches }
}

fn scheme_above(system: &MaximalSystem, vertices: &[u32]) -> Result<DistanceScheme> {
    DistanceScheme::of_measurements(system, vertices)
}

/// `G′_w` spectrum against `{θ_k}` with scheme multiplicities.
pub fn gw_prime_check(system: &MaximalSystem) -> Result<SpectralCheck> {
    let w = default_direction(system.n())?;
    let g = build_gw_prime(system, &w)?;
    let scheme = scheme_above(system, g.vertices())?;
    let spaces = scheme.dual_polar_eigenspaces()?;
    let expected = combined_spectrum(&spaces, &unit_coefficients(scheme.diameter, 1));
    Ok(compare(system.n(), spectrum(&g)?, expected))
}

/// `G_w` check including the closed-form max and spectral parameter.
#[derive(Clone, Debug)]
pub struct HalfGraphCheck {
    pub check: SpectralCheck,
    pub closed_max: f64,
    pub closed_lambda: f64,
    /// Whether the closed-form half eigenvalue occurs in the spectrum.
    pub half_eigenvalue_present: bool,
    /// `2^{−n/2}`.
    pub predicted_ratio: f64,
}

impl HalfGraphCheck {
    pub fn passes(&self) -> bool {
        let s = &self.check.numeric;
        self.check.matches
            && self.half_eigenvalue_present
            && (s.max - self.closed_max).abs() < 1e-8
            && (s.lambda - self.closed_lambda).abs() < 1e-8
            && (s.ratio - self.predicted_ratio).abs() < 1e-12
            && s.residual_ok()
    }
}

pub fn gw_check(system: &MaximalSystem) -> Result<HalfGraphCheck> {
    let n = system.n();
    let w = default_direction(n)?;
    let g = build_gw(system, &w)?;
    let scheme = scheme_above(system, g.vertices())?;
    let spaces = scheme.dual_polar_eigenspaces()?;
    let expected = combined_spectrum(&spaces, &unit_coefficients(scheme.diameter, n / 2));
    let m = (n - 1) as u32;
    let closed = dual_polar_eigenvalues(m, (n / 2) as u32)?;
    let half = half_eigenvalue(m)?.to_i128().ok_or(Error::InvalidArgument("overflow".into()))?;
    let half_eigenvalue_present = expected.iter().any(|&(v, _)| v == half);
    let check = compare(n, spectrum(&g)?, expected);
    Ok(HalfGraphCheck {
        check,
        closed_max: closed.max.to_f64().unwrap_or(f64::NAN),
        closed_lambda: closed.lambda.to_f64().unwrap_or(f64::NAN),
        half_eigenvalue_present,
        predicted_ratio: 2f64.powi(-((n / 2) as i32)),
    })
}

/// Spectral summary of the bipartite graph `B_{n,2}` through `BBᵀ`.
#[derive(Clone, Debug)]
pub struct BbtAnalysis {
    pub n: usize,
    pub left: usize,
    pub right: usize,
    /// `BBᵀ = Σ_i [n−i choose 2]₂ A_i` entrywise.
    pub decomposition_holds: bool,
    pub check: SpectralCheck,
    /// `Δ² = Σ_i [n−i choose 2]₂ P_{0,i}` from the closed-form valencies.
    pub delta_sq_closed: f64,
    pub delta: f64,
    pub lambda: f64,
    pub ratio: f64,
    /// `(λ/Δ)·2^{n/2}`.
    pub constant: f64,
    /// `4(λ/Δ)²`.
    pub pval_spectral_bound: f64,
}

/// Largest system accepted by [`bbt_analysis`].
pub const MAX_BBT_QUBITS: usize = 4;

pub fn bbt_analysis(system: &MaximalSystem) -> Result<BbtAnalysis> {
    let n = system.n();
    if !(3..=MAX_BBT_QUBITS).contains(&n) {
        return Err(Error::Capacity { what: "qubits for BBᵀ analysis", value: n as u64, limit: MAX_BBT_QUBITS as u64 });
    }
    let b = build_b_n2(system)?;
    let gram = b.gram_left();
    let all: Vec<u32> = (0..system.len() as u32).collect();
    let dist = distance_matrix(system, &all);
    let coeff = q_choose2_coefficients(n as u32);
    let order = system.len();
    let decomposition_holds = (0..order * order).all(|k| gram[k] == coeff[usize::from(dist[k])] as f64);
    let scheme = DistanceScheme::measure(&dist, order)?;
    let spaces = scheme.dual_polar_eigenspaces()?;
    let expected = combined_spectrum(&spaces, &coeff);
    let numeric = symmetric_spectrum(&gram, order, false);
    let check = compare(n, numeric, expected);
    let delta_sq_closed: f64 = (0..=n as u32)
        .map(|i| (qbinomial(u64::from(n as u32 - i), 2) * valency(n as u32, i)).to_f64().unwrap_or(f64::NAN))
        .sum();
    let values = &check.numeric.eigenvalues;
    let top = values.first().copied().unwrap_or(0.0);
    let second = values.iter().copied().find(|&v| (top - v).abs() > 1e-6).unwrap_or(0.0);
    let delta = top.sqrt();
    let lambda = second.max(0.0).sqrt();
    let ratio = lambda / delta;
    Ok(BbtAnalysis {
        n,
        left: b.left.len(),
        right: b.right.len(),
        decomposition_holds,
        check,
        delta_sq_closed,
        delta,
        lambda,
        ratio,
        constant: ratio * 2f64.powf(n as f64 / 2.0),
        pval_spectral_bound: 4.0 * ratio * ratio,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn three_qubit_graphs() {
        let sys = MaximalSystem::new(3).unwrap();
        let c = gw_prime_check(&sys).unwrap();
        assert!(c.matches, "{:?}", c.expected);
        assert_eq!(c.numeric.max, 6.0);
        let b = bbt_analysis(&sys).unwrap();
        assert!(b.decomposition_holds && b.check.matches);
        assert!((b.delta * b.delta - 21.0).abs() < 1e-9);
        assert!((b.delta_sq_closed - 21.0).abs() < 1e-9);
        assert!(b.constant <= 8.0);
    }

    #[test]
    fn two_qubit_half_graph() {
        let sys = MaximalSystem::new(2).unwrap();
        let c = gw_check(&sys).unwrap();
        assert!(c.passes(), "{c:?}");
        assert_eq!(c.check.numeric.ratio, 0.5);
    }
}
