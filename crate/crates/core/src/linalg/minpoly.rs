use num_complex::Complex64;

use super::matrix::{vec_norm, ComplexMatrix};
use super::svd::singular_values_of_columns;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MinimalPolynomialDegree {
    pub degree: usize,
    /// `sigma_min / sigma_max` at the deciding power.
    pub ratio: f64,
    /// Set when some rank decision fell within a factor 10 of the threshold.
    pub warning: bool,
}

/// Smallest `k` with `{I, A, ..., A^k}` numerically dependent.
///
/// The degree is invariant under `A -> (A - mu) / s`; the powers are taken of
/// the centred and rescaled matrix, which keeps Jordan-like inputs well
/// separated from the rank threshold.
pub fn minimal_polynomial_degree(a: &ComplexMatrix, tol: f64) -> Result<MinimalPolynomialDegree> {
    a.validate()?;
    if !(tol > 0.0) {
        return Err(Error::input("rank tolerance must be positive"));
    }
    let n = a.n();
    let mu = a.diag().iter().sum::<Complex64>() / n as f64;
    let centred = a.shift(mu);
    let scale = centred.frobenius_norm();
    if scale == 0.0 {
        return Ok(MinimalPolynomialDegree { degree: 1, ratio: 0.0, warning: false });
    }
    let b = centred.scale_real(1.0 / scale);
    let mut power = ComplexMatrix::identity(n);
    let mut cols: Vec<Vec<Complex64>> = vec![normalized(&power).expect("identity is nonzero")];
    let mut warning = false;
    for k in 1..=n {
        power = power.matmul(&b);
        let Some(col) = normalized(&power) else {
            return Ok(MinimalPolynomialDegree { degree: k, ratio: 0.0, warning });
        };
        cols.push(col);
        let s = singular_values_of_columns(&cols)?;
        let ratio = s[s.len() - 1] / s[0];
        if ratio > tol / 10.0 && ratio < tol * 10.0 {
            warning = true;
        }
        if ratio <= tol {
            return Ok(MinimalPolynomialDegree { degree: k, ratio, warning });
        }
    }
    // Cayley-Hamilton: numerically only reached when tol is tiny.
    Ok(MinimalPolynomialDegree { degree: n, ratio: f64::NAN, warning: true })
}

fn normalized(m: &ComplexMatrix) -> Option<Vec<Complex64>> {
    let v = m.as_slice();
    let norm = vec_norm(v);
    (norm > 0.0).then(|| v.iter().map(|z| z / norm).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_has_degree_one() {
        let d = minimal_polynomial_degree(&ComplexMatrix::identity(6), 1e-8).unwrap();
        assert_eq!(d.degree, 1);
        assert!(!d.warning);
    }

    #[test]
    fn nilpotent_shift_has_full_degree() {
        for n in 1..7 {
            let s = ComplexMatrix::from_real_fn(n, |i, j| if j == i + 1 { 1.0 } else { 0.0 });
            assert_eq!(minimal_polynomial_degree(&s, 1e-8).unwrap().degree, n);
        }
    }

    #[test]
    fn rejects_nonpositive_tol() {
        assert!(minimal_polynomial_degree(&ComplexMatrix::identity(2), 0.0).is_err());
    }
}
