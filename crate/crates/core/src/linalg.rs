//! Dense symmetric eigensolver: Householder tridiagonalization followed by
//! the implicit QL iteration (the EISPACK `tred2`/`tql2` pair).

use alloc::vec;
use alloc::vec::Vec;
#[allow(unused_imports)]
use num_traits::Float;

/// Eigen-decomposition of a real symmetric matrix.
#[derive(Clone, Debug)]
pub struct SymmetricEigen {
    /// Eigenvalues in descending order.
    pub values: Vec<f64>,
    /// Unit eigenvectors, `vectors[i]` belonging to `values[i]`.
    pub vectors: Option<Vec<Vec<f64>>>,
}

/// Decomposes the symmetric `n × n` row-major matrix `a`.
///
/// Only the lower triangle is read. Eigenvectors cost an extra `O(n³)`
/// accumulation pass, so ask for them only when needed.
pub fn symmetric_eigen(a: &[f64], n: usize, want_vectors: bool) -> SymmetricEigen {
    assert_eq!(a.len(), n * n, "matrix must be n × n");
    if n == 0 {
        return SymmetricEigen { values: Vec::new(), vectors: want_vectors.then(Vec::new) };
    }
    // `t` holds the transpose of the working matrix of the textbook routine,
    // which keeps the hot loops on contiguous rows. The input is symmetric,
    // so the transpose of `a` is `a` with the upper triangle mirrored.
    let mut t = vec![0.0f64; n * n];
    for i in 0..n {
        for j in 0..=i {
            t[i * n + j] = a[i * n + j];
            t[j * n + i] = a[i * n + j];
        }
    }
    let mut d = vec![0.0f64; n];
    let mut e = vec![0.0f64; n];
    tridiagonalize(&mut t, n, &mut d, &mut e);

    let mut v = if want_vectors {
        let mut v = vec![0.0f64; n * n];
        for i in 0..n {
            for j in 0..n {
                v[i * n + j] = t[j * n + i];
            }
        }
        accumulate(&mut v, n, &mut d, &mut e);
        Some(v)
    } else {
        for (j, dj) in d.iter_mut().enumerate() {
            *dj = t[j * n + j];
        }
        e[0] = 0.0;
        None
    };
    ql_implicit(&mut d, &mut e, n, v.as_deref_mut());

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| d[j].partial_cmp(&d[i]).unwrap_or(core::cmp::Ordering::Equal));
    let values = order.iter().map(|&i| d[i]).collect();
    let vectors = v.map(|v| order.iter().map(|&c| (0..n).map(|r| v[r * n + c]).collect()).collect());
    SymmetricEigen { values, vectors }
}

/// Householder reduction on the transposed working matrix `t`. On exit `e`
/// holds the subdiagonal (shifted by one) and the diagonal of `t` holds the
/// tridiagonal diagonal; `d[i]` holds the Householder scalars.
fn tridiagonalize(t: &mut [f64], n: usize, d: &mut [f64], e: &mut [f64]) {
    for j in 0..n {
        d[j] = t[j * n + (n - 1)];
    }
    for i in (1..n).rev() {
        let scale: f64 = d[..i].iter().map(|x| x.abs()).sum();
        let mut h = 0.0;
        if scale == 0.0 {
            e[i] = d[i - 1];
            for j in 0..i {
                d[j] = t[j * n + (i - 1)];
                t[j * n + i] = 0.0;
                t[i * n + j] = 0.0;
            }
        } else {
            for dk in d[..i].iter_mut() {
                *dk /= scale;
                h += *dk * *dk;
            }
            let f = d[i - 1];
            let mut g = h.sqrt();
            if f > 0.0 {
                g = -g;
            }
            e[i] = scale * g;
            h -= f * g;
            d[i - 1] = f - g;
            for ej in e[..i].iter_mut() {
                *ej = 0.0;
            }
            for j in 0..i {
                let f = d[j];
                t[i * n + j] = f;
                let row = &t[j * n..j * n + i];
                let mut g = e[j] + row[j] * f;
                for k in (j + 1)..i {
                    g += row[k] * d[k];
                    e[k] += row[k] * f;
                }
                e[j] = g;
            }
            let mut f = 0.0;
            for j in 0..i {
                e[j] /= h;
                f += e[j] * d[j];
            }
            let hh = f / (h + h);
            for j in 0..i {
                e[j] -= hh * d[j];
            }
            for j in 0..i {
                let f = d[j];
                let g = e[j];
                let row = &mut t[j * n..j * n + i];
                for k in j..i {
                    row[k] -= f * e[k] + g * d[k];
                }
                d[j] = t[j * n + (i - 1)];
                t[j * n + i] = 0.0;
            }
        }
        d[i] = h;
    }
}

/// Accumulates the Householder transformations into `v` (textbook layout).
fn accumulate(v: &mut [f64], n: usize, d: &mut [f64], e: &mut [f64]) {
    for i in 0..n - 1 {
        v[(n - 1) * n + i] = v[i * n + i];
        v[i * n + i] = 1.0;
        let h = d[i + 1];
        if h != 0.0 {
            for k in 0..=i {
                d[k] = v[k * n + i + 1] / h;
            }
            for j in 0..=i {
                let mut g = 0.0;
                for k in 0..=i {
                    g += v[k * n + i + 1] * v[k * n + j];
                }
                for k in 0..=i {
                    v[k * n + j] -= g * d[k];
                }
            }
        }
        for k in 0..=i {
            v[k * n + i + 1] = 0.0;
        }
    }
    for j in 0..n {
        d[j] = v[(n - 1) * n + j];
        v[(n - 1) * n + j] = 0.0;
    }
    v[(n - 1) * n + (n - 1)] = 1.0;
    e[0] = 0.0;
}

/// Implicit QL iteration on the tridiagonal `(d, e)`, rotating `v` if given.
fn ql_implicit(d: &mut [f64], e: &mut [f64], n: usize, mut v: Option<&mut [f64]>) {
    for i in 1..n {
        e[i - 1] = e[i];
    }
    e[n - 1] = 0.0;
    let mut f = 0.0;
    let mut tst1 = 0.0f64;
    let eps = f64::EPSILON;
    for l in 0..n {
        tst1 = tst1.max(d[l].abs() + e[l].abs());
        let mut m = l;
        while m < n - 1 && e[m].abs() > eps * tst1 {
            m += 1;
        }
        if m > l {
            loop {
                let g = d[l];
                let mut p = (d[l + 1] - g) / (2.0 * e[l]);
                let mut r = p.hypot(1.0);
                if p < 0.0 {
                    r = -r;
                }
                d[l] = e[l] / (p + r);
                d[l + 1] = e[l] * (p + r);
                let dl1 = d[l + 1];
                let mut h = g - d[l];
                for di in d[l + 2..].iter_mut() {
                    *di -= h;
                }
                f += h;

                p = d[m];
                let mut c = 1.0;
                let mut c2 = c;
                let mut c3 = c;
                let el1 = e[l + 1];
                let mut s = 0.0;
                let mut s2 = 0.0;
                for i in (l..m).rev() {
                    c3 = c2;
                    c2 = c;
                    s2 = s;
                    let g = c * e[i];
                    h = c * p;
                    r = p.hypot(e[i]);
                    e[i + 1] = s * r;
                    s = e[i] / r;
                    c = p / r;
                    p = c * d[i] - s * g;
                    d[i + 1] = h + s * (c * g + s * d[i]);
                    if let Some(v) = v.as_deref_mut() {
                        for k in 0..n {
                            let hk = v[k * n + i + 1];
                            v[k * n + i + 1] = s * v[k * n + i] + c * hk;
                            v[k * n + i] = c * v[k * n + i] - s * hk;
                        }
                    }
                }
                p = -s * s2 * c3 * el1 * e[l] / dl1;
                e[l] = s * p;
                d[l] = c * p;
                if e[l].abs() <= eps * tst1 {
                    break;
                }
            }
        }
        d[l] += f;
        e[l] = 0.0;
    }
}

/// `max_i ‖A vᵢ − λᵢ vᵢ‖` over the supplied eigenpairs.
pub fn max_residual(a: &[f64], n: usize, values: &[f64], vectors: &[Vec<f64>]) -> f64 {
    let mut worst = 0.0f64;
    let mut av = vec![0.0; n];
    for (lam, v) in values.iter().zip(vectors) {
        for (i, out) in av.iter_mut().enumerate() {
            *out = a[i * n..(i + 1) * n].iter().zip(v).map(|(x, y)| x * y).sum();
        }
        let r: f64 = av.iter().zip(v).map(|(x, y)| (x - lam * y) * (x - lam * y)).sum::<f64>().sqrt();
        worst = worst.max(r);
    }
    worst
}

/// Frobenius-type scale `max_i Σ_j |a_ij|`, an upper bound on `‖A‖₂`.
pub fn row_sum_norm(a: &[f64], n: usize) -> f64 {
    (0..n).map(|i| a[i * n..(i + 1) * n].iter().map(|x| x.abs()).sum::<f64>()).fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complete(n: usize) -> Vec<f64> {
        let mut a = vec![1.0; n * n];
        for i in 0..n {
            a[i * n + i] = 0.0;
        }
        a
    }

    #[test]
    fn complete_graph_spectrum() {
        let a = complete(4);
        let eig = symmetric_eigen(&a, 4, true);
        assert!((eig.values[0] - 3.0).abs() < 1e-12);
        for &v in &eig.values[1..] {
            assert!((v + 1.0).abs() < 1e-12);
        }
        let vecs = eig.vectors.unwrap();
        assert!(max_residual(&a, 4, &eig.values, &vecs) < 1e-12);
    }

    #[test]
    fn values_only_matches_full() {
        let n = 9;
        let mut a = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..=i {
                let x = ((i * 7 + j * 3) % 11) as f64 - 5.0;
                a[i * n + j] = x;
                a[j * n + i] = x;
            }
        }
        let full = symmetric_eigen(&a, n, true);
        let vals = symmetric_eigen(&a, n, false);
        for (x, y) in full.values.iter().zip(&vals.values) {
            assert!((x - y).abs() < 1e-10, "{x} vs {y}");
        }
        assert!(max_residual(&a, n, &full.values, full.vectors.as_ref().unwrap()) < 1e-10);
        let trace: f64 = (0..n).map(|i| a[i * n + i]).sum();
        assert!((full.values.iter().sum::<f64>() - trace).abs() < 1e-10);
    }

    #[test]
    fn diagonal_and_trivial() {
        let a = [2.0, 0.0, 0.0, -1.0];
        let e = symmetric_eigen(&a, 2, true);
        assert_eq!(e.values, vec![2.0, -1.0]);
        assert_eq!(symmetric_eigen(&[5.0], 1, false).values, vec![5.0]);
    }
}
