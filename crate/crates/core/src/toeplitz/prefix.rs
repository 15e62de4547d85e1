use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// First `n` Taylor coefficients of a symbol at the origin.
#[derive(Debug, Clone, PartialEq)]
pub struct TaylorPrefix {
    coeffs: Vec<Complex64>,
}

impl TaylorPrefix {
    pub fn new(coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::input("Taylor prefix must have length >= 1"));
        }
        if coeffs.iter().any(|c| !(c.re.is_finite() && c.im.is_finite())) {
            return Err(Error::input("Taylor prefix has non-finite coefficients"));
        }
        Ok(TaylorPrefix { coeffs })
    }

    pub fn from_real(coeffs: &[f64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    /// Prefix of the constant symbol `c`.
    pub fn constant(c: Complex64, n: usize) -> Self {
        let mut coeffs = vec![ZERO; n.max(1)];
        coeffs[0] = c;
        TaylorPrefix { coeffs }
    }

    /// Reads the first row of an upper triangular Toeplitz matrix, rejecting
    /// inputs whose entries deviate from that structure by more than `tol`.
    pub fn from_uttm(a: &ComplexMatrix, tol: f64) -> Result<Self> {
        a.validate()?;
        let n = a.n();
        let coeffs: Vec<Complex64> = a.row(0).to_vec();
        for j in 0..n {
            for k in 0..n {
                let want = if k >= j { coeffs[k - j] } else { ZERO };
                if (a[(j, k)] - want).norm() > tol {
                    return Err(Error::input(format!(
                        "not upper triangular Toeplitz: entry ({j}, {k}) deviates by {:.3e}",
                        (a[(j, k)] - want).norm()
                    )));
                }
            }
        }
        Ok(TaylorPrefix { coeffs })
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn truncate(&self, n: usize) -> Self {
        TaylorPrefix { coeffs: self.coeffs[..n.clamp(1, self.len())].to_vec() }
    }

    pub fn scale(&self, s: Complex64) -> Self {
        TaylorPrefix { coeffs: self.coeffs.iter().map(|c| c * s).collect() }
    }

    /// Evaluates the truncated series as a polynomial.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs.iter().rev().fold(ZERO, |acc, &c| acc * z + c)
    }

    /// `(f - g)` coefficientwise.
    pub fn sub(&self, other: &Self) -> Result<Self> {
        same_len(self, other)?;
        Ok(TaylorPrefix { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect() })
    }

    pub fn add_constant(&self, c: Complex64) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs[0] += c;
        TaylorPrefix { coeffs }
    }

    /// Multiplication by `z`, truncated to the same length.
    pub fn shift_up(&self) -> Self {
        let mut coeffs = vec![ZERO; self.len()];
        coeffs[1..].copy_from_slice(&self.coeffs[..self.len() - 1]);
        TaylorPrefix { coeffs }
    }

    /// Division by `z` of a series with vanishing constant term; the length
    /// drops by one.
    pub fn shift_down(&self) -> Option<Self> {
        (self.len() > 1).then(|| TaylorPrefix { coeffs: self.coeffs[1..].to_vec() })
    }

    /// Series quotient `self / den`.
    pub fn divide(&self, den: &Self) -> Result<Self> {
        same_len(self, den)?;
        let d0 = den.coeffs[0];
        if d0.norm() == 0.0 {
            return Err(Error::singular("series division by a symbol vanishing at 0"));
        }
        let n = self.len();
        let mut q = vec![ZERO; n];
        for m in 0..n {
            let mut s = self.coeffs[m];
            for j in 1..=m {
                s -= den.coeffs[j] * q[m - j];
            }
            q[m] = s / d0;
        }
        Ok(TaylorPrefix { coeffs: q })
    }
}

fn same_len(f: &TaylorPrefix, g: &TaylorPrefix) -> Result<()> {
    if f.len() != g.len() {
        return Err(Error::input(format!("prefix lengths differ: {} vs {}", f.len(), g.len())));
    }
    Ok(())
}

/// The upper triangular Toeplitz matrix with `(j, k)` entry `a_{k-j}`.
pub fn uttm(prefix: &TaylorPrefix) -> ComplexMatrix {
    let c = prefix.coeffs();
    ComplexMatrix::from_fn(prefix.len(), |j, k| if k >= j { c[k - j] } else { ZERO })
}

/// Truncated Cauchy product.
pub fn prefix_multiply(f: &TaylorPrefix, g: &TaylorPrefix) -> Result<TaylorPrefix> {
    same_len(f, g)?;
    let n = f.len();
    let coeffs = (0..n)
        .map(|m| (0..=m).map(|j| f.coeffs[j] * g.coeffs[m - j]).sum())
        .collect();
    Ok(TaylorPrefix { coeffs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extremal::{build, MatrixKind};

    #[test]
    fn uttm_examples() {
        let m3 = uttm(&TaylorPrefix::from_real(&[1.0, 2.0, 2.0]).unwrap());
        assert_eq!(m3, build(MatrixKind::M, 3, None).unwrap());
        let one = uttm(&TaylorPrefix::from_real(&[4.5]).unwrap());
        assert_eq!(one[(0, 0)], Complex64::new(4.5, 0.0));
        let shift = uttm(&TaylorPrefix::from_real(&[0.0, 1.0, 0.0, 0.0, 0.0]).unwrap());
        assert_eq!(shift, build(MatrixKind::N, 5, None).unwrap());
    }

    #[test]
    fn multiply_examples() {
        let f = TaylorPrefix::from_real(&[1.0, 1.0]).unwrap();
        let g = TaylorPrefix::from_real(&[1.0, -1.0]).unwrap();
        assert_eq!(prefix_multiply(&f, &g).unwrap(), TaylorPrefix::from_real(&[1.0, 0.0]).unwrap());
        let m = TaylorPrefix::from_real(&[1.0, 2.0, 2.0]).unwrap();
        let id = TaylorPrefix::from_real(&[1.0, 0.0, 0.0]).unwrap();
        assert_eq!(prefix_multiply(&m, &id).unwrap(), m);
        assert!(prefix_multiply(&m, &f).is_err());
    }

    #[test]
    fn division_inverts_multiplication() {
        let f = TaylorPrefix::new(vec![Complex64::new(1.0, 1.0), Complex64::new(0.5, 0.0), Complex64::new(0.0, -2.0)])
            .unwrap();
        let g = TaylorPrefix::new(vec![Complex64::new(2.0, 0.0), Complex64::new(0.0, 1.0), Complex64::new(3.0, 0.0)])
            .unwrap();
        let q = prefix_multiply(&f, &g).unwrap().divide(&g).unwrap();
        for (a, b) in q.coeffs().iter().zip(f.coeffs()) {
            assert!((a - b).norm() < 1e-14);
        }
        assert!(f.divide(&TaylorPrefix::from_real(&[0.0, 1.0, 0.0]).unwrap()).is_err());
    }

    #[test]
    fn structure_check() {
        let m = build(MatrixKind::M, 4, None).unwrap();
        assert_eq!(TaylorPrefix::from_uttm(&m, 1e-12).unwrap().coeffs()[1], Complex64::new(2.0, 0.0));
        let mut bad = m.clone();
        bad[(2, 1)] = Complex64::new(1e-9, 0.0);
        assert!(TaylorPrefix::from_uttm(&bad, 1e-12).is_err());
        let mut bad = m;
        bad[(1, 3)] = Complex64::new(1.5, 0.0);
        assert!(TaylorPrefix::from_uttm(&bad, 1e-12).is_err());
        assert!(TaylorPrefix::new(vec![]).is_err());
    }
}
