//! Disk automorphisms of matrices and the Schur algorithm on symbols.

use num_complex::Complex64;

use super::prefix::{uttm, TaylorPrefix};
use crate::error::{Error, Result};
use crate::linalg::{inverse, operator_norm, right_divide, ComplexMatrix};
use crate::tolerances::Tolerances;

const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// `B = (A - alpha)(I - conj(alpha) A)^{-1}`.
pub fn moebius(a: &ComplexMatrix, alpha: Complex64) -> Result<ComplexMatrix> {
    if alpha.norm() >= 1.0 {
        return Err(Error::domain(format!("|alpha| = {} must be < 1", alpha.norm())));
    }
    let n = a.n();
    let den = &ComplexMatrix::identity(n) - &a.scale(alpha.conj());
    right_divide(&a.shift(alpha), &den).map_err(|e| match e {
        Error::Singular(m) => Error::singular(format!("I - conj(alpha) A is singular: {m}")),
        other => other,
    })
}

/// Frobenius norm of
/// `(I - B^*B) - (I - alpha A^*)^{-1} (1 - |alpha|^2)(I - A^*A)(I - conj(alpha) A)^{-1}`
/// for `B = moebius(A, alpha)`.
pub fn moebius_defect_residual(a: &ComplexMatrix, alpha: Complex64) -> Result<f64> {
    let n = a.n();
    let id = ComplexMatrix::identity(n);
    let b = moebius(a, alpha)?;
    let lhs = &id - &b.adjoint().matmul(&b);
    let left = inverse(&(&id - &a.adjoint().scale(alpha)))?;
    let right = inverse(&(&id - &a.scale(alpha.conj())))?;
    let middle = (&id - &a.adjoint().matmul(a)).scale_real(1.0 - alpha.norm_sqr());
    let rhs = left.matmul(&middle).matmul(&right);
    Ok((&lhs - &rhs).frobenius_norm())
}

#[derive(Debug, Clone, PartialEq)]
pub struct SchurParameters {
    pub gammas: Vec<Complex64>,
    /// The last parameter is unimodular within the configured band.
    pub terminated: bool,
}

impl SchurParameters {
    /// Index of the unimodular parameter, which is the order of the
    /// Blaschke product the symbol agrees with.
    pub fn blaschke_order(&self) -> Option<usize> {
        self.terminated.then(|| self.gammas.len() - 1)
    }
}

/// One Schur step on a prefix: `g = (f - gamma) / (1 - conj(gamma) f)`,
/// followed by division by `z`.
fn schur_step(f: &TaylorPrefix, gamma: Complex64) -> Result<Option<TaylorPrefix>> {
    let num = f.add_constant(-gamma);
    let den = f.scale(-gamma.conj()).add_constant(ONE);
    Ok(num.divide(&den)?.shift_down())
}

/// Schur parameters of a symbol prefix.
pub fn schur_parameters_prefix(prefix: &TaylorPrefix, tol: &Tolerances) -> Result<SchurParameters> {
    let mut gammas = Vec::with_capacity(prefix.len());
    let mut f = Some(prefix.clone());
    while let Some(cur) = f {
        let gamma = cur.coeffs()[0];
        gammas.push(gamma);
        if gamma.norm() >= 1.0 - tol.schur_unimodular {
            return Ok(SchurParameters { gammas, terminated: true });
        }
        f = schur_step(&cur, gamma)?;
    }
    Ok(SchurParameters { gammas, terminated: false })
}

fn check_contraction_uttm(a: &ComplexMatrix, tol: &Tolerances) -> Result<TaylorPrefix> {
    if a.lower_magnitude() > tol.uttm_structure {
        return Err(Error::input("matrix is not upper triangular"));
    }
    let prefix = TaylorPrefix::from_uttm(a, tol.uttm_structure)?;
    let norm = operator_norm(a)?;
    if norm > 1.0 + tol.contraction_slack {
        return Err(Error::domain(format!("||A|| = {norm} exceeds 1")));
    }
    Ok(prefix)
}

/// Schur parameters of an upper triangular Toeplitz contraction, computed on
/// its symbol prefix.
pub fn schur_parameters(a: &ComplexMatrix) -> Result<SchurParameters> {
    schur_parameters_with(a, &Tolerances::default())
}

pub fn schur_parameters_with(a: &ComplexMatrix, tol: &Tolerances) -> Result<SchurParameters> {
    let prefix = check_contraction_uttm(a, tol)?;
    schur_parameters_prefix(&prefix, tol)
}

/// The same recursion carried out on matrices: apply [`moebius`] with the
/// corner entry and strip the shift by dropping the first column and last
/// row.
pub fn schur_parameters_matrix_path(a: &ComplexMatrix, tol: &Tolerances) -> Result<SchurParameters> {
    check_contraction_uttm(a, tol)?;
    let mut gammas = Vec::with_capacity(a.n());
    let mut cur = a.clone();
    loop {
        let gamma = cur[(0, 0)];
        gammas.push(gamma);
        if gamma.norm() >= 1.0 - tol.schur_unimodular {
            return Ok(SchurParameters { gammas, terminated: true });
        }
        let m = cur.n();
        if m == 1 {
            return Ok(SchurParameters { gammas, terminated: false });
        }
        let b = moebius(&cur, gamma)?;
        cur = ComplexMatrix::from_fn(m - 1, |j, k| b[(j, k + 1)]);
    }
}

/// Rebuilds the first `n` Taylor coefficients of the Schur function with the
/// given parameters (the last one is held constant).
pub fn prefix_from_schur_parameters(gammas: &[Complex64], n: usize) -> Result<TaylorPrefix> {
    if gammas.is_empty() || n == 0 {
        return Err(Error::input("need at least one parameter and n >= 1"));
    }
    if let Some(g) = gammas[..gammas.len() - 1].iter().find(|g| g.norm() >= 1.0) {
        return Err(Error::domain(format!("non-final Schur parameter {g} is not in the open disk")));
    }
    let k = gammas.len().min(n);
    let mut f = TaylorPrefix::constant(gammas[k - 1], n - (k - 1));
    for j in (0..k - 1).rev() {
        let len = n - j;
        let mut coeffs = vec![Complex64::new(0.0, 0.0); len];
        coeffs[1..].copy_from_slice(f.coeffs());
        let zf = TaylorPrefix::new(coeffs)?;
        let num = zf.add_constant(gammas[j]);
        let den = zf.scale(gammas[j].conj()).add_constant(ONE);
        f = num.divide(&den)?;
    }
    Ok(f)
}

#[derive(Debug, Clone, PartialEq)]
pub struct NormCertificate {
    pub norm: f64,
    /// `A / ||A||` has a finite Blaschke product of order `<= n - 1` as symbol.
    pub certified: bool,
    pub parameters: SchurParameters,
}

/// Certifies `||A||` for an upper triangular Toeplitz `A` by running the
/// Schur algorithm on `A / ||A||`.
pub fn norm_certificate(a: &ComplexMatrix) -> Result<NormCertificate> {
    norm_certificate_with(a, &Tolerances::default())
}

pub fn norm_certificate_with(a: &ComplexMatrix, tol: &Tolerances) -> Result<NormCertificate> {
    let prefix = TaylorPrefix::from_uttm(a, tol.uttm_structure)?;
    let norm = operator_norm(a)?;
    if norm == 0.0 {
        return Ok(NormCertificate {
            norm,
            certified: false,
            parameters: SchurParameters { gammas: Vec::new(), terminated: false },
        });
    }
    let parameters = schur_parameters_prefix(&prefix.scale(Complex64::new(1.0 / norm, 0.0)), tol)?;
    let certified = parameters.terminated && parameters.gammas.len() <= a.n();
    Ok(NormCertificate { norm, certified, parameters })
}

/// Convenience: the matrix of a rebuilt Schur function.
pub fn uttm_from_schur_parameters(gammas: &[Complex64], n: usize) -> Result<ComplexMatrix> {
    Ok(uttm(&prefix_from_schur_parameters(gammas, n)?))
}
