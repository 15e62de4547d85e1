//! Hermitian eigensolver: Householder tridiagonalization, a diagonal phase
//! change to a real symmetric tridiagonal, then implicit QL.

use num_complex::Complex64;

use super::matrix::ComplexMatrix;
use super::schur::hessenberg;
use crate::error::{Error, Result};

/// Eigenvalues in ascending order with orthonormal eigenvectors as columns.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    pub values: Vec<f64>,
    pub vectors: ComplexMatrix,
}

impl HermitianEigen {
    pub fn vector(&self, k: usize) -> Vec<Complex64> {
        self.vectors.column(k)
    }
}

/// Eigen-decomposition of the Hermitian part of `a`.
pub fn hermitian_eigen(a: &ComplexMatrix) -> Result<HermitianEigen> {
    a.validate()?;
    let n = a.n();
    let sym = ComplexMatrix::from_fn(n, |i, j| (a[(i, j)] + a[(j, i)].conj()) * 0.5);
    let (t, q) = hessenberg(&sym, true);
    let q = q.expect("requested");

    let mut d: Vec<f64> = (0..n).map(|i| t[(i, i)].re).collect();
    let mut e = vec![0.0; n];
    let mut phase = vec![Complex64::new(1.0, 0.0); n];
    for i in 0..n.saturating_sub(1) {
        let sub = t[(i + 1, i)];
        let m = sub.norm();
        e[i] = m;
        phase[i + 1] = if m > 0.0 { phase[i] * sub / m } else { phase[i] };
    }

    let mut z = vec![0.0; n * n];
    for i in 0..n {
        z[i * n + i] = 1.0;
    }
    tql2(&mut d, &mut e, &mut z, n)?;

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| d[i].total_cmp(&d[j]));
    let values: Vec<f64> = order.iter().map(|&i| d[i]).collect();
    // vectors = Q D Z
    let mut vectors = ComplexMatrix::zeros(n);
    for (col, &k) in order.iter().enumerate() {
        let y: Vec<Complex64> = (0..n).map(|j| phase[j] * z[j * n + k]).collect();
        for i in 0..n {
            let row = q.row(i);
            vectors[(i, col)] = row.iter().zip(&y).map(|(a, b)| a * b).sum();
        }
    }
    Ok(HermitianEigen { values, vectors })
}

/// Implicit QL on a real symmetric tridiagonal matrix.
///
/// `d` holds the diagonal and `e[i]` the entry coupling `i` and `i + 1`.
/// `z` is row-major `n x n` and accumulates the rotations.
fn tql2(d: &mut [f64], e: &mut [f64], z: &mut [f64], n: usize) -> Result<()> {
    if n < 2 {
        return Ok(());
    }
    let eps = f64::EPSILON;
    let mut f = 0.0;
    let mut tst1: f64 = 0.0;
    for l in 0..n {
        tst1 = tst1.max(d[l].abs() + e[l].abs());
        let mut m = l;
        while m < n {
            if e[m].abs() <= eps * tst1 {
                break;
            }
            m += 1;
        }
        if m > l {
            let mut iter = 0;
            loop {
                iter += 1;
                if iter > 30 * n {
                    return Err(Error::numeric("tridiagonal QL did not converge"));
                }
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
                for di in d.iter_mut().take(n).skip(l + 2) {
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
                    for k in 0..n {
                        let zk = &mut z[k * n..(k + 1) * n];
                        let h = zk[i + 1];
                        zk[i + 1] = s * zk[i] + c * h;
                        zk[i] = c * zk[i] - s * h;
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
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eigenpairs_of_a_hermitian_matrix() {
        let n = 9;
        let a = ComplexMatrix::from_fn(n, |i, j| {
            let base = Complex64::new((i + j) as f64 * 0.3, (i as f64 - j as f64) * 0.7);
            if i == j { Complex64::new(i as f64, 0.0) } else { base }
        });
        let eig = hermitian_eigen(&a).unwrap();
        assert!(eig.vectors.unitarity_defect() < 1e-12);
        for k in 0..n {
            let v = eig.vector(k);
            let av = a.mul_vec(&v);
            let res: f64 = av.iter().zip(&v).map(|(x, y)| (x - y * eig.values[k]).norm_sqr()).sum::<f64>().sqrt();
            assert!(res < 1e-12 * a.frobenius_norm(), "{res}");
        }
        assert!(eig.values.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn one_by_one_and_diagonal() {
        let a = ComplexMatrix::from_real_rows(&[vec![3.0]]).unwrap();
        assert_eq!(hermitian_eigen(&a).unwrap().values, vec![3.0]);
        let d = ComplexMatrix::from_real_rows(&[vec![2.0, 0.0], vec![0.0, -1.0]]).unwrap();
        assert_eq!(hermitian_eigen(&d).unwrap().values, vec![-1.0, 2.0]);
    }

    #[test]
    fn path_laplacian_spectrum() {
        let n = 30;
        let a = ComplexMatrix::from_real_fn(n, |i, j| match i.abs_diff(j) {
            0 => 2.0,
            1 => -1.0,
            _ => 0.0,
        });
        let eig = hermitian_eigen(&a).unwrap();
        for (k, v) in eig.values.iter().enumerate() {
            let want = 2.0 - 2.0 * ((k + 1) as f64 * std::f64::consts::PI / (n + 1) as f64).cos();
            assert!((v - want).abs() < 1e-13);
        }
    }
}
