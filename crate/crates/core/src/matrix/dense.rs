use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Sub};

use num_complex::Complex64;
use num_traits::{One, Zero};
#[allow(unused_imports)]
use num_traits::Float;

/// A square complex matrix stored row-major.
#[derive(Clone, PartialEq)]
pub struct DenseOperator {
    dim: usize,
    data: Vec<Complex64>,
}

impl DenseOperator {
    pub fn zeros(dim: usize) -> Self {
        Self { dim, data: vec![Complex64::zero(); dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.data[i * dim + i] = Complex64::one();
        }
        m
    }

    pub fn from_rows(dim: usize, data: Vec<Complex64>) -> Self {
        assert_eq!(data.len(), dim * dim);
        Self { dim, data }
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Complex64 {
        self.data[r * self.dim + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Complex64) {
        self.data[r * self.dim + c] = v;
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self { dim: self.dim, data: self.data.iter().map(|&x| x * s).collect() }
    }

    pub fn adjoint(&self) -> Self {
        let d = self.dim;
        let mut m = Self::zeros(d);
        for r in 0..d {
            for c in 0..d {
                m.data[c * d + r] = self.data[r * d + c].conj();
            }
        }
        m
    }

    pub fn transpose(&self) -> Self {
        let d = self.dim;
        let mut m = Self::zeros(d);
        for r in 0..d {
            for c in 0..d {
                m.data[c * d + r] = self.data[r * d + c];
            }
        }
        m
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self.data[i * self.dim + i]).sum()
    }

    /// `tr(self · other)` without forming the product.
    pub fn trace_product(&self, other: &Self) -> Complex64 {
        let d = self.dim;
        let mut acc = Complex64::zero();
        for r in 0..d {
            for k in 0..d {
                acc += self.data[r * d + k] * other.data[k * d + r];
            }
        }
        acc
    }

    pub fn kron(&self, other: &Self) -> Self {
        let (a, b) = (self.dim, other.dim);
        let d = a * b;
        let mut m = Self::zeros(d);
        for i in 0..a {
            for j in 0..a {
                let s = self.data[i * a + j];
                if s.is_zero() {
                    continue;
                }
                for k in 0..b {
                    for l in 0..b {
                        m.data[(i * b + k) * d + j * b + l] = s * other.data[k * b + l];
                    }
                }
            }
        }
        m
    }

    /// Largest entrywise modulus of `self − other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.data.iter().zip(&other.data).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.dim == other.dim && self.max_abs_diff(other) <= tol
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.approx_eq(&self.adjoint(), tol)
    }

    pub fn commutes_with(&self, other: &Self, tol: f64) -> bool {
        (self * other).approx_eq(&(other * self), tol)
    }

    pub fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        let d = self.dim;
        (0..d).map(|r| self.data[r * d..(r + 1) * d].iter().zip(v).map(|(a, b)| a * b).sum()).collect()
    }

    /// Rank of a numerically exact projector, read off its trace.
    pub fn projector_rank(&self) -> usize {
        let t = self.trace().re;
        libm::round(t).max(0.0) as usize
    }
}

impl Mul for &DenseOperator {
    type Output = DenseOperator;
    fn mul(self, rhs: &DenseOperator) -> DenseOperator {
        assert_eq!(self.dim, rhs.dim);
        let d = self.dim;
        let mut m = DenseOperator::zeros(d);
        for r in 0..d {
            for k in 0..d {
                let a = self.data[r * d + k];
                if a.is_zero() {
                    continue;
                }
                for c in 0..d {
                    m.data[r * d + c] += a * rhs.data[k * d + c];
                }
            }
        }
        m
    }
}

impl Add for &DenseOperator {
    type Output = DenseOperator;
    fn add(self, rhs: &DenseOperator) -> DenseOperator {
        assert_eq!(self.dim, rhs.dim);
        DenseOperator { dim: self.dim, data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect() }
    }
}

impl Sub for &DenseOperator {
    type Output = DenseOperator;
    fn sub(self, rhs: &DenseOperator) -> DenseOperator {
        assert_eq!(self.dim, rhs.dim);
        DenseOperator { dim: self.dim, data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect() }
    }
}

/// Row-major text, one row per line, entries as `re+imi`.
impl fmt::Display for DenseOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.dim {
            for c in 0..self.dim {
                if c > 0 {
                    f.write_str(" ")?;
                }
                let z = self.get(r, c);
                write!(f, "{}{:+}i", z.re, z.im)?;
            }
            f.write_str("\n")?;
        }
        Ok(())
    }
}

impl fmt::Debug for DenseOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DenseOperator({}x{})\n{}", self.dim, self.dim, self)
    }
}

/// A unit vector in `C^dim`.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    amps: Vec<Complex64>,
}

impl StateVector {
    /// Normalizes `amps`; `None` for the zero vector.
    pub fn new(amps: Vec<Complex64>) -> Option<Self> {
        let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        (norm > 1e-300).then(|| Self { amps: amps.into_iter().map(|a| a / norm).collect() })
    }

    /// A Haar-random state from standard Gaussian amplitudes.
    pub fn random<R: rand::Rng + ?Sized>(dim: usize, rng: &mut R) -> Self {
        loop {
            let amps = (0..dim).map(|_| Complex64::new(gaussian(rng), gaussian(rng))).collect();
            if let Some(s) = Self::new(amps) {
                return s;
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &Self) -> Complex64 {
        self.amps.iter().zip(&other.amps).map(|(a, b)| a.conj() * b).sum()
    }

    /// `⟨ψ|P|ψ⟩`.
    pub fn expectation(&self, op: &DenseOperator) -> Complex64 {
        let pv = op.apply(&self.amps);
        self.amps.iter().zip(&pv).map(|(a, b)| a.conj() * b).sum()
    }

    /// Entrywise complex conjugate.
    pub fn conj(&self) -> Self {
        Self { amps: self.amps.iter().map(|a| a.conj()).collect() }
    }
}

/// Standard normal variate by Box–Muller.
pub(crate) fn gaussian<R: rand::Rng + ?Sized>(rng: &mut R) -> f64 {
    let u1: f64 = rng.gen::<f64>().max(f64::MIN_POSITIVE);
    let u2: f64 = rng.gen();
    (-2.0 * u1.ln()).sqrt() * (core::f64::consts::TAU * u2).cos()
}

/// A pure state on `C^{d_a} ⊗ C^{d_b}` held as its amplitude matrix `M`,
/// `|ψ⟩ = Σ M_ij |i⟩|j⟩`. Local operators act as `(A ⊗ B)ψ ↔ A M Bᵀ`.
#[derive(Clone, Debug)]
pub struct BipartiteState {
    amps: DenseOperator,
}

impl BipartiteState {
    /// `Σ_i |i⟩|i⟩ / √d`.
    pub fn maximally_entangled(d: usize) -> Self {
        let s = Complex64::new(1.0 / (d as f64).sqrt(), 0.0);
        Self { amps: DenseOperator::identity(d).scale(s) }
    }

    pub fn dim(&self) -> usize {
        self.amps.dim()
    }

    /// `⟨ψ| A ⊗ B |ψ⟩ = tr(M† A M Bᵀ)`.
    pub fn expectation(&self, a: &DenseOperator, b: &DenseOperator) -> Complex64 {
        let amb = &(a * &self.amps) * &b.transpose();
        self.amps.adjoint().trace_product(&amb)
    }

    pub fn norm(&self) -> f64 {
        self.amps.trace_product(&self.amps.adjoint()).re.sqrt()
    }
}
