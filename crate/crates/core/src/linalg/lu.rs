use num_complex::Complex64;

use super::matrix::ComplexMatrix;
use crate::error::{Error, Result};

/// LU factorization with partial pivoting, `P A = L U`.
#[derive(Debug, Clone)]
pub struct Lu {
    lu: ComplexMatrix,
    perm: Vec<usize>,
    sign: f64,
}

impl Lu {
    /// Factors `a`. Fails when a pivot falls below `rel_pivot * max|a_ij|`.
    pub fn factor(a: &ComplexMatrix, rel_pivot: f64) -> Result<Self> {
        a.validate()?;
        let n = a.n();
        let scale = a.max_abs();
        if scale == 0.0 {
            return Err(Error::singular("zero matrix"));
        }
        let floor = rel_pivot * scale;
        let mut lu = a.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut sign = 1.0;
        for k in 0..n {
            let (p, pmax) = (k..n)
                .map(|i| (i, lu[(i, k)].norm()))
                .fold((k, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
            if pmax <= floor {
                return Err(Error::singular(format!(
                    "pivot {pmax:.3e} at column {k} below {floor:.3e}"
                )));
            }
            if p != k {
                for j in 0..n {
                    let t = lu[(k, j)];
                    lu[(k, j)] = lu[(p, j)];
                    lu[(p, j)] = t;
                }
                perm.swap(k, p);
                sign = -sign;
            }
            let pivot = lu[(k, k)];
            for i in k + 1..n {
                let l = lu[(i, k)] / pivot;
                lu[(i, k)] = l;
                if l.re == 0.0 && l.im == 0.0 {
                    continue;
                }
                for j in k + 1..n {
                    let u = lu[(k, j)];
                    lu[(i, j)] -= l * u;
                }
            }
        }
        Ok(Lu { lu, perm, sign })
    }

    pub fn n(&self) -> usize {
        self.lu.n()
    }

    pub fn solve(&self, b: &[Complex64]) -> Vec<Complex64> {
        let n = self.n();
        assert_eq!(b.len(), n);
        let mut x: Vec<Complex64> = self.perm.iter().map(|&p| b[p]).collect();
        for i in 0..n {
            let mut s = x[i];
            for j in 0..i {
                s -= self.lu[(i, j)] * x[j];
            }
            x[i] = s;
        }
        for i in (0..n).rev() {
            let mut s = x[i];
            for j in i + 1..n {
                s -= self.lu[(i, j)] * x[j];
            }
            x[i] = s / self.lu[(i, i)];
        }
        x
    }

    /// Solves `A^* x = b`.
    pub fn solve_adjoint(&self, b: &[Complex64]) -> Vec<Complex64> {
        // A^* = U^* L^* P, so solve U^* y = b, L^* w = y, then x = P^T w.
        let n = self.n();
        let mut y = b.to_vec();
        for i in 0..n {
            let mut s = y[i];
            for j in 0..i {
                s -= self.lu[(j, i)].conj() * y[j];
            }
            y[i] = s / self.lu[(i, i)].conj();
        }
        for i in (0..n).rev() {
            let mut s = y[i];
            for j in i + 1..n {
                s -= self.lu[(j, i)].conj() * y[j];
            }
            y[i] = s;
        }
        let mut x = vec![Complex64::new(0.0, 0.0); n];
        for (k, &p) in self.perm.iter().enumerate() {
            x[p] = y[k];
        }
        x
    }

    pub fn inverse(&self) -> ComplexMatrix {
        let n = self.n();
        let mut inv = ComplexMatrix::zeros(n);
        let mut e = vec![Complex64::new(0.0, 0.0); n];
        for j in 0..n {
            e.iter_mut().for_each(|v| *v = Complex64::new(0.0, 0.0));
            e[j] = Complex64::new(1.0, 0.0);
            let col = self.solve(&e);
            for i in 0..n {
                inv[(i, j)] = col[i];
            }
        }
        inv
    }

    pub fn determinant(&self) -> Complex64 {
        (0..self.n()).fold(Complex64::new(self.sign, 0.0), |d, i| d * self.lu[(i, i)])
    }
}

/// Inverse with the default pivot floor `1e-13`.
pub fn inverse(a: &ComplexMatrix) -> Result<ComplexMatrix> {
    Ok(Lu::factor(a, 1e-13)?.inverse())
}

/// `X = A B^{-1}`.
pub fn right_divide(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    // X B = A  <=>  B^* X^* = A^*.
    let lu = Lu::factor(&b.adjoint(), 1e-13)?;
    let n = a.n();
    let mut x = ComplexMatrix::zeros(n);
    for i in 0..n {
        let rhs: Vec<Complex64> = a.row(i).iter().map(|z| z.conj()).collect();
        let col = lu.solve(&rhs);
        for j in 0..n {
            x[(i, j)] = col[j].conj();
        }
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn test_matrix() -> ComplexMatrix {
        ComplexMatrix::from_fn(4, |i, j| {
            Complex64::new((i * 3 + j * 7 % 5) as f64 - 2.0, (i as f64 - j as f64) * 0.5)
                + if i == j { Complex64::new(0.0, 4.0) } else { Complex64::new(0.0, 0.0) }
        })
    }

    #[test]
    fn inverse_times_matrix_is_identity() {
        let a = test_matrix();
        let inv = inverse(&a).unwrap();
        let err = (&a.matmul(&inv) - &ComplexMatrix::identity(4)).max_abs();
        assert!(err < 1e-13, "{err}");
    }

    #[test]
    fn adjoint_solve_matches_adjoint_matrix() {
        let a = test_matrix();
        let lu = Lu::factor(&a, 1e-13).unwrap();
        let b: Vec<Complex64> = (0..4).map(|k| Complex64::new(k as f64, 1.0)).collect();
        let x = lu.solve_adjoint(&b);
        let r = a.adjoint().mul_vec(&x);
        for (ri, bi) in r.iter().zip(&b) {
            assert!((ri - bi).norm() < 1e-12);
        }
    }

    #[test]
    fn right_divide_solves_xb_eq_a() {
        let a = test_matrix();
        let b = a.adjoint().shift(Complex64::new(1.0, 0.0));
        let x = right_divide(&a, &b).unwrap();
        assert!((&x.matmul(&b) - &a).max_abs() < 1e-12);
    }

    #[test]
    fn singular_is_reported() {
        let a = ComplexMatrix::from_real_rows(&[vec![1.0, 2.0], vec![2.0, 4.0]]).unwrap();
        assert!(matches!(inverse(&a), Err(Error::Singular(_))));
    }

    #[test]
    fn determinant_of_triangular() {
        let a = ComplexMatrix::from_real_rows(&[vec![2.0, 5.0], vec![0.0, 3.0]]).unwrap();
        let d = Lu::factor(&a, 1e-13).unwrap().determinant();
        assert!((d - Complex64::new(6.0, 0.0)).norm() < 1e-14);
    }
}
