//! Dense complex polynomials in the monomial basis.

use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{hessenberg_eigenvalues, ComplexMatrix};
use crate::tolerances::Tolerances;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Coefficients in ascending order, `p(z) = sum c_k z^k`.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial {
    pub coeffs: Vec<Complex64>,
}

impl Polynomial {
    pub fn new(coeffs: Vec<Complex64>) -> Self {
        Polynomial { coeffs }
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        Polynomial { coeffs: coeffs.iter().map(|&x| Complex64::new(x, 0.0)).collect() }
    }

    pub fn monomial(k: usize) -> Self {
        let mut coeffs = vec![ZERO; k + 1];
        coeffs[k] = ONE;
        Polynomial { coeffs }
    }

    /// `prod (z - r)`.
    pub fn from_roots(roots: &[Complex64]) -> Self {
        let mut p = Polynomial { coeffs: vec![ONE] };
        for &r in roots {
            p = p.mul(&Polynomial { coeffs: vec![-r, ONE] });
        }
        p
    }

    /// Degree after dropping exact zero leading terms; 0 for constants.
    pub fn degree(&self) -> usize {
        self.coeffs.iter().rposition(|c| *c != ZERO).unwrap_or(0)
    }

    pub fn trimmed(&self) -> Self {
        let d = self.degree();
        Polynomial { coeffs: self.coeffs.iter().take(d + 1).copied().collect() }
    }

    pub fn leading(&self) -> Complex64 {
        self.coeffs.get(self.degree()).copied().unwrap_or(ZERO)
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs.iter().rev().fold(ZERO, |acc, &c| acc * z + c)
    }

    /// `(p(z), p'(z))` by Horner.
    pub fn eval_with_derivative(&self, z: Complex64) -> (Complex64, Complex64) {
        let mut p = ZERO;
        let mut dp = ZERO;
        for &c in self.coeffs.iter().rev() {
            dp = dp * z + p;
            p = p * z + c;
        }
        (p, dp)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Polynomial { coeffs: Vec::new() };
        }
        let mut out = vec![ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial { coeffs: out }
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Polynomial { coeffs: self.coeffs.iter().map(|c| c * s).collect() }
    }

    /// `z^n conj(p(1 / conj z))`: reverse and conjugate the first `n + 1`
    /// coefficients.
    pub fn reversed(&self, n: usize) -> Self {
        let coeffs = (0..=n)
            .map(|j| self.coeffs.get(n - j).copied().unwrap_or(ZERO).conj())
            .collect();
        Polynomial { coeffs }
    }

    /// Largest coefficientwise difference, padding the shorter with zeros.
    pub fn max_coeff_diff(&self, other: &Self) -> f64 {
        let len = self.coeffs.len().max(other.coeffs.len());
        (0..len)
            .map(|k| {
                let a = self.coeffs.get(k).copied().unwrap_or(ZERO);
                let b = other.coeffs.get(k).copied().unwrap_or(ZERO);
                (a - b).norm()
            })
            .fold(0.0, f64::max)
    }

    /// Companion matrix of the monic normalization, in upper Hessenberg form.
    pub fn companion(&self) -> Result<ComplexMatrix> {
        let p = self.trimmed();
        let d = p.degree();
        if d == 0 {
            return Err(Error::input("companion matrix needs degree >= 1"));
        }
        let lead = p.coeffs[d];
        let mut m = ComplexMatrix::zeros(d);
        for k in 0..d {
            m[(0, k)] = -p.coeffs[d - 1 - k] / lead;
        }
        for i in 1..d {
            m[(i, i - 1)] = ONE;
        }
        Ok(m)
    }

    /// Roots from the eigenvalues of the companion matrix.
    pub fn companion_roots(&self) -> Result<Vec<Complex64>> {
        let c = self.companion()?;
        let norm = c.norm_bound();
        Ok(hessenberg_eigenvalues(c, norm, &Tolerances::default())?.eigenvalues)
    }

    /// All roots by Aberth-Ehrlich simultaneous iteration.
    pub fn aberth_roots(&self, tol: &Tolerances) -> Result<Vec<Complex64>> {
        let p = self.trimmed();
        let d = p.degree();
        if d == 0 {
            return Ok(Vec::new());
        }
        let lead = p.coeffs[d].norm();
        let c0 = p.coeffs[0].norm();
        // Geometric mean of root moduli; the origin is a root when c0 = 0.
        let radius = if c0 > 0.0 { (c0 / lead).powf(1.0 / d as f64) } else { 1.0 };
        let mut z: Vec<Complex64> = (0..d)
            .map(|k| Complex64::from_polar(radius, TAU * k as f64 / d as f64 + 0.4))
            .collect();
        for _ in 0..tol.aberth_max_sweeps {
            let mut worst: f64 = 0.0;
            for i in 0..d {
                let (v, dv) = p.eval_with_derivative(z[i]);
                if v == ZERO {
                    continue;
                }
                let ratio = v / dv;
                let repulsion: Complex64 = (0..d)
                    .filter(|&j| j != i)
                    .map(|j| {
                        let diff = z[i] - z[j];
                        if diff == ZERO { ZERO } else { ONE / diff }
                    })
                    .sum();
                let step = ratio / (ONE - ratio * repulsion);
                if step.re.is_finite() && step.im.is_finite() {
                    z[i] -= step;
                    worst = worst.max(step.norm() / z[i].norm().max(1.0));
                }
            }
            if worst <= tol.aberth_tol {
                return Ok(z);
            }
        }
        Err(Error::numeric(format!("Aberth iteration did not converge in {} sweeps", tol.aberth_max_sweeps)))
    }
}
