use alloc::vec::Vec;

use num_complex::Complex64;

use super::dense::{DenseOperator, StateVector};
use crate::error::{Error, Result};
use crate::gf2::GF2Vector;
use crate::lattice::{outcomes, Measurement, Outcome};

/// Largest qubit count for dense matrices (`16 × 16`).
pub const MAX_MATRIX_QUBITS: usize = 4;

fn check_matrix_qubits(n: usize) -> Result<()> {
    if n > MAX_MATRIX_QUBITS {
        Err(Error::Capacity { what: "qubits for dense matrices", value: n as u64, limit: MAX_MATRIX_QUBITS as u64 })
    } else {
        Ok(())
    }
}

/// `X^{x₁,₁}Z^{x₂,₁} ⊗ … ⊗ X^{x₁,ₙ}Z^{x₂,ₙ}`, qubit 1 most significant.
///
/// `X^a Z^b |j⟩ = (−1)^{b·j} |j ⊕ a⟩`, so the matrix is a signed permutation.
pub fn xz_matrix(x: &GF2Vector) -> Result<DenseOperator> {
    check_matrix_qubits(x.n())?;
    let d = 1usize << x.n();
    let (a, b) = (x.x_part() as usize, x.z_part() as usize);
    let mut m = DenseOperator::zeros(d);
    for j in 0..d {
        let sign = if (b & j).count_ones() % 2 == 1 { -1.0 } else { 1.0 };
        m.set(j ^ a, j, Complex64::new(sign, 0.0));
    }
    Ok(m)
}

/// `i^{x₁·x₂} XZ(x)` with the dot product taken in Z₂.
pub fn conventional_phase_matrix(x: &GF2Vector) -> Result<DenseOperator> {
    let m = xz_matrix(x)?;
    Ok(if x.xz_overlap() { m.scale(Complex64::i()) } else { m })
}

/// Whether the two Pauli words commute, decided on the matrices.
pub fn commute_check(a: &GF2Vector, b: &GF2Vector) -> Result<bool> {
    if a.n() != b.n() {
        return Err(Error::DimensionMismatch { left: a.n(), right: b.n() });
    }
    let (ma, mb) = (xz_matrix(a)?, xz_matrix(b)?);
    Ok(ma.commutes_with(&mb, 1e-12))
}

/// `(I + (−1)^{o(b)} C(b))/2` multiplied over the canonical basis.
pub fn outcome_projector(o: &Outcome) -> Result<DenseOperator> {
    check_matrix_qubits(o.n())?;
    let d = 1usize << o.n();
    let id = DenseOperator::identity(d);
    let half = Complex64::new(0.5, 0.0);
    let mut p = id.clone();
    for (i, b) in o.base().basis().enumerate() {
        let c = conventional_phase_matrix(&b)?;
        let signed = if o.values() >> i & 1 == 1 { c.scale(Complex64::new(-1.0, 0.0)) } else { c };
        let factor = (&id + &signed).scale(half);
        p = &p * &factor;
    }
    Ok(p)
}

/// Projector of every outcome of `s`, in [`outcomes`] order.
pub fn eigenspace_projectors(s: &Measurement) -> Result<Vec<(Outcome, DenseOperator)>> {
    check_matrix_qubits(s.n())?;
    outcomes(s)?
        .into_iter()
        .map(|o| {
            let p = outcome_projector(&o)?;
            Ok((o, p))
        })
        .collect()
}

/// The stabilizer state of a maximal outcome (its rank-one projector's
/// range), with a fixed global phase.
pub fn outcome_state(o: &Outcome) -> Result<StateVector> {
    if !o.base().is_maximal() {
        return Err(Error::NotMaximal { dim: o.base().dim(), n: o.n() });
    }
    let p = outcome_projector(o)?;
    let d = p.dim();
    let col = (0..d)
        .max_by(|&a, &b| p.get(a, a).re.partial_cmp(&p.get(b, b).re).unwrap_or(core::cmp::Ordering::Equal))
        .expect("nonempty");
    let amps = (0..d).map(|r| p.get(r, col)).collect();
    StateVector::new(amps).ok_or(Error::Unsupported("zero projector".into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(s: &str) -> GF2Vector {
        s.parse().unwrap()
    }

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn single_qubit_words() {
        let x = xz_matrix(&v("1|0")).unwrap();
        assert_eq!(x, DenseOperator::from_rows(2, alloc::vec![c(0., 0.), c(1., 0.), c(1., 0.), c(0., 0.)]));
        let z = xz_matrix(&v("0|1")).unwrap();
        assert_eq!(z, DenseOperator::from_rows(2, alloc::vec![c(1., 0.), c(0., 0.), c(0., 0.), c(-1., 0.)]));
        let xz = xz_matrix(&v("1|1")).unwrap();
        assert_eq!(xz, DenseOperator::from_rows(2, alloc::vec![c(0., 0.), c(-1., 0.), c(1., 0.), c(0., 0.)]));
        let y = DenseOperator::from_rows(2, alloc::vec![c(0., 0.), c(0., -1.), c(0., 1.), c(0., 0.)]);
        assert!(conventional_phase_matrix(&v("1|1")).unwrap().approx_eq(&y, 0.0));
    }

    #[test]
    fn minus_y_y() {
        let y = conventional_phase_matrix(&v("1|1")).unwrap();
        let yy = y.kron(&y).scale(c(-1., 0.));
        assert!(conventional_phase_matrix(&v("11|11")).unwrap().approx_eq(&yy, 0.0));
    }

    #[test]
    fn z_projector() {
        let s = Measurement::span(1, [v("0|1")]).unwrap();
        let ps = eigenspace_projectors(&s).unwrap();
        let ket0 = DenseOperator::from_rows(2, alloc::vec![c(1., 0.), c(0., 0.), c(0., 0.), c(0., 0.)]);
        assert!(ps[0].1.approx_eq(&ket0, 1e-15));
        assert_eq!(ps[1].1.projector_rank(), 1);
    }

    #[test]
    fn capacity() {
        let big = GF2Vector::zero(5).unwrap();
        assert!(matches!(xz_matrix(&big), Err(Error::Capacity { .. })));
    }
}
