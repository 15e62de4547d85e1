use num_complex::Complex64;

use super::prefix::TaylorPrefix;
use crate::error::{Error, Result};
use crate::poly::Polynomial;

/// `omega * prod (z - w_j) / (1 - conj(w_j) z)`.
#[derive(Debug, Clone, PartialEq)]
pub struct BlaschkeProduct {
    omega: Complex64,
    zeros: Vec<Complex64>,
}

impl BlaschkeProduct {
    pub fn new(omega: Complex64, zeros: Vec<Complex64>) -> Result<Self> {
        if (omega.norm() - 1.0).abs() > 1e-12 {
            return Err(Error::domain(format!("|omega| = {} is not 1", omega.norm())));
        }
        if let Some(w) = zeros.iter().find(|w| !(w.norm() < 1.0)) {
            return Err(Error::domain(format!("zero {w} is not in the open disk")));
        }
        Ok(BlaschkeProduct { omega, zeros })
    }

    /// The single factor `(z - alpha) / (1 - conj(alpha) z)`.
    pub fn factor(alpha: Complex64) -> Result<Self> {
        Self::new(Complex64::new(1.0, 0.0), vec![alpha])
    }

    pub fn omega(&self) -> Complex64 {
        self.omega
    }

    pub fn zeros(&self) -> &[Complex64] {
        &self.zeros
    }

    pub fn order(&self) -> usize {
        self.zeros.len()
    }

    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        let mut value = self.omega;
        for w in &self.zeros {
            let den = Complex64::new(1.0, 0.0) - w.conj() * z;
            if den.norm() < 1e-14 {
                return Err(Error::singular(format!("z = {z} is at a pole")));
            }
            value *= (z - w) / den;
        }
        Ok(value)
    }

    /// Numerator `omega prod (z - w)` and denominator `prod (1 - conj(w) z)`.
    pub fn numerator_denominator(&self) -> (Polynomial, Polynomial) {
        let num = Polynomial::from_roots(&self.zeros).scale(self.omega);
        let mut den = Polynomial::from_real(&[1.0]);
        for w in &self.zeros {
            den = den.mul(&Polynomial::new(vec![Complex64::new(1.0, 0.0), -w.conj()]));
        }
        (num, den)
    }

    /// First `n` Taylor coefficients at the origin.
    pub fn taylor_prefix(&self, n: usize) -> TaylorPrefix {
        let (num, den) = self.numerator_denominator();
        let pad = |p: &Polynomial| -> Vec<Complex64> {
            (0..n.max(1)).map(|k| p.coeffs.get(k).copied().unwrap_or_default()).collect()
        };
        let num = TaylorPrefix::new(pad(&num)).expect("finite");
        let den = TaylorPrefix::new(pad(&den)).expect("finite");
        num.divide(&den).expect("denominator is 1 at the origin")
    }

    /// Largest `||f(z)| - 1|` over `m` equally spaced points of the circle.
    pub fn boundary_defect(&self, m: usize) -> f64 {
        (0..m)
            .map(|k| {
                let z = Complex64::from_polar(1.0, std::f64::consts::TAU * k as f64 / m as f64);
                self.eval(z).map(|v| (v.norm() - 1.0).abs()).unwrap_or(f64::INFINITY)
            })
            .fold(0.0, f64::max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn order_zero_is_constant() {
        let b = BlaschkeProduct::new(c(0.0, 1.0), vec![]).unwrap();
        assert_eq!(b.eval(c(0.3, -0.2)).unwrap(), c(0.0, 1.0));
        assert_eq!(b.order(), 0);
    }

    #[test]
    fn zero_at_origin_is_rotation() {
        let omega = Complex64::from_polar(1.0, 0.7);
        let b = BlaschkeProduct::new(omega, vec![c(0.0, 0.0)]).unwrap();
        let z = c(0.4, 0.5);
        assert!((b.eval(z).unwrap() - omega * z).norm() < 1e-16);
    }

    #[test]
    fn unimodular_on_circle() {
        let b = BlaschkeProduct::new(c(1.0, 0.0), vec![c(0.5, 0.1), c(-0.3, 0.8), c(0.0, -0.95)]).unwrap();
        assert!(b.boundary_defect(256) < 1e-12);
    }

    #[test]
    fn validation_and_poles() {
        assert!(BlaschkeProduct::new(c(2.0, 0.0), vec![]).is_err());
        assert!(BlaschkeProduct::new(c(1.0, 0.0), vec![c(1.0, 0.0)]).is_err());
        let b = BlaschkeProduct::factor(c(0.5, 0.0)).unwrap();
        assert!(matches!(b.eval(c(2.0, 0.0)), Err(Error::Singular(_))));
    }

    #[test]
    fn taylor_prefix_of_single_factor() {
        // (z - a)/(1 - a z) = -a + (1 - a^2) z + a (1 - a^2) z^2 + ...
        let a = 0.5;
        let p = BlaschkeProduct::factor(c(a, 0.0)).unwrap().taylor_prefix(4);
        let want = [-a, 1.0 - a * a, a * (1.0 - a * a), a * a * (1.0 - a * a)];
        for (got, w) in p.coeffs().iter().zip(want) {
            assert!((got - c(w, 0.0)).norm() < 1e-15);
        }
    }
}
