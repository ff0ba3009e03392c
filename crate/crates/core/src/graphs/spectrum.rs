use alloc::vec::Vec;


use super::graph::LabeledGraph;
use crate::error::{Error, Result};
use crate::linalg::{max_residual, row_sum_norm, symmetric_eigen};
#[allow(unused_imports)]
use num_traits::Float;

/// Largest vertex count accepted by [`spectrum`].
pub const MAX_SPECTRUM_VERTICES: usize = 10_000;
/// Distance to an integer below which eigenvalues are snapped.
pub const SNAP_TOLERANCE: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpectrumMethod {
    ClosedForm,
    Numeric,
}

/// Adjacency spectrum summary.
#[derive(Clone, Debug)]
pub struct SpectrumReport {
    /// Eigenvalues in descending order, snapped to integers when close.
    pub eigenvalues: Vec<f64>,
    pub max: f64,
    /// Second largest element of `{|l|}`: the spectral parameter.
    pub lambda: f64,
    /// Largest `|l|` after removing one copy of the top eigenvalue; equals
    /// `lambda` on connected non-bipartite graphs and is what walk and
    /// hitting bounds need when the graph is disconnected or bipartite.
    pub lambda_nontrivial: f64,
    pub ratio: f64,
    pub method: SpectrumMethod,
    /// `max ‖Av − lv‖` over all eigenpairs, when eigenvectors were computed.
    pub residual: Option<f64>,
    /// `‖A‖` bound used to scale the residual tolerance.
    pub norm_bound: f64,
    /// Whether every eigenvalue snapped to an integer.
    pub integral: bool,
}

impl SpectrumReport {
    /// Builds a report from raw eigenvalues.
    pub fn from_values(mut values: Vec<f64>, method: SpectrumMethod, residual: Option<f64>, norm_bound: f64) -> Self {
        let mut integral = true;
        for v in &mut values {
            let r = v.round();
            if (*v - r).abs() <= SNAP_TOLERANCE {
                *v = if r == 0.0 { 0.0 } else { r };
            } else {
                integral = false;
            }
        }
        values.sort_by(|a, b| b.partial_cmp(a).unwrap_or(core::cmp::Ordering::Equal));
        let max = values.first().copied().unwrap_or(0.0);
        let lambda = spectral_parameter(&values);
        let lambda_nontrivial = values.iter().skip(1).map(|v| v.abs()).fold(0.0, f64::max);
        let ratio = if max != 0.0 { lambda / max } else { 0.0 };
        Self { eigenvalues: values, max, lambda, lambda_nontrivial, ratio, method, residual, norm_bound, integral }
    }

    /// Distinct eigenvalues (descending) with multiplicities.
    pub fn multiplicities(&self) -> Vec<(f64, usize)> {
        group_values(&self.eigenvalues)
    }

    /// Whether the residual meets `1e−8 · ‖A‖`.
    pub fn residual_ok(&self) -> bool {
        self.residual.is_none_or(|r| r <= 1e-8 * self.norm_bound.max(1.0))
    }
}

/// Groups a descending list into `(value, multiplicity)` pairs.
pub fn group_values(values: &[f64]) -> Vec<(f64, usize)> {
    let mut out: Vec<(f64, usize)> = Vec::new();
    for &v in values {
        match out.last_mut() {
            Some((u, c)) if (*u - v).abs() <= SNAP_TOLERANCE => *c += 1,
            _ => out.push((v, 1)),
        }
    }
    out
}

/// Second largest distinct absolute value; `0` if there is only one.
pub fn spectral_parameter(values: &[f64]) -> f64 {
    let mut abs: Vec<f64> = values.iter().map(|v| v.abs()).collect();
    abs.sort_by(|a, b| b.partial_cmp(a).unwrap_or(core::cmp::Ordering::Equal));
    abs.dedup_by(|a, b| (*a - *b).abs() <= SNAP_TOLERANCE);
    abs.get(1).copied().unwrap_or(0.0)
}

/// Numeric adjacency spectrum with eigenvector residuals.
pub fn spectrum<P>(g: &LabeledGraph<P>) -> Result<SpectrumReport> {
    spectrum_with(g, true)
}

/// As [`spectrum`], optionally skipping eigenvectors (no residual).
pub fn spectrum_with<P>(g: &LabeledGraph<P>, vectors: bool) -> Result<SpectrumReport> {
    let n = g.order();
    if n > MAX_SPECTRUM_VERTICES {
        return Err(Error::Capacity { what: "vertices for the dense eigensolver", value: n as u64, limit: MAX_SPECTRUM_VERTICES as u64 });
    }
    let a = g.dense_adjacency();
    Ok(symmetric_spectrum(&a, n, vectors))
}

/// Spectrum of an arbitrary symmetric matrix, snapped and summarized.
pub fn symmetric_spectrum(a: &[f64], n: usize, vectors: bool) -> SpectrumReport {
    let eig = symmetric_eigen(a, n, vectors);
    let residual = eig.vectors.as_ref().map(|v| max_residual(a, n, &eig.values, v));
    SpectrumReport::from_values(eig.values, SpectrumMethod::Numeric, residual, row_sum_norm(a, n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn k3() {
        let g = LabeledGraph::from_predicate(vec![(); 3], |_, _| true);
        let s = spectrum(&g).unwrap();
        assert_eq!(s.eigenvalues, vec![2.0, -1.0, -1.0]);
        assert_eq!((s.max, s.lambda, s.ratio), (2.0, 1.0, 0.5));
        assert!(s.residual_ok() && s.integral);
        assert_eq!(s.multiplicities(), vec![(2.0, 1), (-1.0, 2)]);
    }

    #[test]
    fn parameter_uses_distinct_absolute_values() {
        assert_eq!(spectral_parameter(&[3.0, 1.0, -3.0]), 1.0);
        assert_eq!(spectral_parameter(&[1.0, 1.0, -1.0]), 0.0);
        let r = SpectrumReport::from_values(vec![1.0, 1.0, -1.0, -1.0], SpectrumMethod::Numeric, None, 1.0);
        assert_eq!((r.lambda, r.lambda_nontrivial), (0.0, 1.0));
    }
}
