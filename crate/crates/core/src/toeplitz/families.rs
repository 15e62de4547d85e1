//! The near-extremal family `A_n(a)` and the sine/cosine generating
//! polynomials behind the closed form of `||M_n||`.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::blaschke::BlaschkeProduct;
use super::prefix::{prefix_multiply, uttm, TaylorPrefix};
use crate::error::{Error, Result};
use crate::extremal::{build, c_of_n, MatrixKind};
use crate::linalg::{inverse, operator_norm, ComplexMatrix};
use crate::poly::Polynomial;
use crate::tolerances::Tolerances;

fn check_a(a: f64) -> Result<()> {
    if !(a > 0.0 && a < 1.0) {
        return Err(Error::domain(format!("a = {a} must lie in (0, 1)")));
    }
    Ok(())
}

/// Taylor coefficients of `(z + a) / (1 + a z)`: `a, (1 - a^2)(-a)^{j-1}`.
pub fn f_a_prefix(n: usize, a: f64) -> Result<TaylorPrefix> {
    check_a(a)?;
    if n == 0 {
        return Err(Error::input("n must be at least 1"));
    }
    let mut coeffs = Vec::with_capacity(n);
    coeffs.push(Complex64::new(a, 0.0));
    let mut power = 1.0;
    for _ in 1..n {
        coeffs.push(Complex64::new((1.0 - a * a) * power, 0.0));
        power *= -a;
    }
    TaylorPrefix::new(coeffs)
}

/// `A_n(a)`, the Toeplitz contraction with symbol `(z + a) / (1 + a z)`.
pub fn a_family(n: usize, a: f64) -> Result<ComplexMatrix> {
    Ok(uttm(&f_a_prefix(n, a)?))
}

/// `(1 - a) || (I - A_n(a))^{-1} ||`, which tends to `cot(pi/4n)` as
/// `a -> 1`.
pub fn a_family_ratio(n: usize, a: f64) -> Result<f64> {
    let inv = inverse(&(&ComplexMatrix::identity(n) - &a_family(n, a)?))?;
    Ok((1.0 - a) * operator_norm(&inv)?)
}

/// `|| (1 - a)(I - A_n(a))^{-1} - M_n ||`.
pub fn resolvent_limit_residual(n: usize, a: f64) -> Result<f64> {
    let inv = inverse(&(&ComplexMatrix::identity(n) - &a_family(n, a)?))?;
    let diff = &inv.scale_real(1.0 - a) - &build(MatrixKind::M, n, None)?;
    operator_norm(&diff)
}

/// `S_j = sin((2j+1) pi / 4n)` and `C_j = cos((2j+1) pi / 4n)`, `j < n`.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneratingPrefixes {
    pub s: TaylorPrefix,
    pub c: TaylorPrefix,
}

impl GeneratingPrefixes {
    /// Series of `S / C`.
    pub fn quotient(&self) -> TaylorPrefix {
        self.s.divide(&self.c).expect("C_0 = cos(pi/4n) > 0")
    }

    pub fn s_polynomial(&self) -> Polynomial {
        Polynomial::new(self.s.coeffs().to_vec())
    }

    /// `S / C` as a Blaschke product of order `n - 1`, from the roots of `S`.
    ///
    /// `C` is the reversal `z^{n-1} conj(S(1/conj z))`, so the zeros of `C`
    /// are the reflections of those of `S`.
    pub fn blaschke(&self, tol: &Tolerances) -> Result<BlaschkeProduct> {
        let s = self.s_polynomial();
        let roots = s.aberth_roots(tol)?;
        let lead = s.leading();
        BlaschkeProduct::new(lead / lead.conj(), roots)
    }

    /// Largest coefficient error in `cot(pi/4n) S = (1+z)/(1-z) C` truncated.
    pub fn identity_residual(&self) -> f64 {
        let n = self.s.len();
        let m: Vec<f64> = (0..n).map(|k| if k == 0 { 1.0 } else { 2.0 }).collect();
        let rhs = prefix_multiply(&TaylorPrefix::from_real(&m).expect("n >= 1"), &self.c).expect("same length");
        let lhs = self.s.scale(Complex64::new(c_of_n(n), 0.0));
        lhs.coeffs().iter().zip(rhs.coeffs()).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }
}

pub fn generating_prefixes(n: usize) -> Result<GeneratingPrefixes> {
    if n == 0 {
        return Err(Error::input("n must be at least 1"));
    }
    let angle = |j: usize| (2 * j + 1) as f64 * PI / (4.0 * n as f64);
    let s: Vec<f64> = (0..n).map(|j| angle(j).sin()).collect();
    let c: Vec<f64> = (0..n).map(|j| angle(j).cos()).collect();
    Ok(GeneratingPrefixes { s: TaylorPrefix::from_real(&s)?, c: TaylorPrefix::from_real(&c)? })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::eigenvalues;

    #[test]
    fn f_a_prefix_small_case() {
        let p = f_a_prefix(3, 0.5).unwrap();
        let want = [0.5, 0.75, -0.375];
        for (got, w) in p.coeffs().iter().zip(want) {
            assert!((got.re - w).abs() < 1e-15 && got.im == 0.0);
        }
        assert!(f_a_prefix(3, 1.0).is_err());
        assert!(f_a_prefix(3, 0.0).is_err());
    }

    #[test]
    fn small_a_approaches_shift_symbol() {
        let p = f_a_prefix(4, 1e-9).unwrap();
        let want = [0.0, 1.0, 0.0, 0.0];
        for (got, w) in p.coeffs().iter().zip(want) {
            assert!((got.re - w).abs() < 1e-8);
        }
    }

    #[test]
    fn family_spectrum_is_a() {
        let spec = eigenvalues(&a_family(5, 0.7).unwrap()).unwrap();
        assert!(spec.eigenvalues.iter().all(|&z| z == Complex64::new(0.7, 0.0)));
    }

    #[test]
    fn residual_examples() {
        assert!(resolvent_limit_residual(1, 0.3).unwrap() < 1e-15);
        assert!(resolvent_limit_residual(4, 0.999).unwrap() < 0.05);
        for n in 2..=8 {
            assert!(resolvent_limit_residual(n, 0.9).unwrap() > resolvent_limit_residual(n, 0.99).unwrap());
        }
    }

    #[test]
    fn generating_prefixes_one() {
        let g = generating_prefixes(1).unwrap();
        assert!((g.quotient().coeffs()[0].re * c_of_n(1) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn sine_coefficients_increase() {
        for n in 1..40 {
            let g = generating_prefixes(n).unwrap();
            assert!(g.s.coeffs().windows(2).all(|w| w[0].re < w[1].re));
        }
    }
}
