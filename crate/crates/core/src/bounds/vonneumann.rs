use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{inverse, operator_norm, svd, ComplexMatrix};
use crate::toeplitz::{BlaschkeProduct, TaylorPrefix};
use crate::tolerances::Tolerances;

/// An analytic self-map of the disk given by its Taylor series.
#[derive(Debug, Clone)]
pub enum DiskMap {
    Blaschke(BlaschkeProduct),
    /// A polynomial the caller asserts maps the disk into itself.
    Prefix(TaylorPrefix),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VonNeumannReport {
    pub norm_fa: f64,
    /// Number of series terms summed.
    pub terms: usize,
    pub satisfied: bool,
}

const MAX_TERMS: usize = 1_000_000;

/// Lazy Taylor coefficients of a Blaschke product: `num = den * f`.
struct BlaschkeSeries {
    num: Vec<Complex64>,
    den: Vec<Complex64>,
    coeffs: Vec<Complex64>,
}

impl BlaschkeSeries {
    fn new(b: &BlaschkeProduct) -> Self {
        let (num, den) = b.numerator_denominator();
        BlaschkeSeries { num: num.coeffs, den: den.coeffs, coeffs: Vec::new() }
    }

    fn next(&mut self) -> Complex64 {
        let k = self.coeffs.len();
        let mut s = self.num.get(k).copied().unwrap_or_default();
        for j in 1..self.den.len().min(k + 1) {
            s -= self.den[j] * self.coeffs[k - j];
        }
        let c = s / self.den[0];
        self.coeffs.push(c);
        c
    }
}

/// `||f(A)||` by the power series of `f`, for `||A|| < 1`.
///
/// Coefficients of a disk map are bounded by 1, so the tail after the term
/// of degree `k` is at most `||A||^{k+1} / (1 - ||A||)`; summation stops once
/// that bound is below `1e-14` of the partial sum.
pub fn von_neumann_check(a: &ComplexMatrix, f: &DiskMap, tol: &Tolerances) -> Result<VonNeumannReport> {
    a.validate()?;
    let r = operator_norm(a)?;
    if r >= 1.0 - 1e-10 {
        return Err(Error::domain(format!("||A|| = {r} is not below 1")));
    }
    let n = a.n();
    let mut sum = ComplexMatrix::zeros(n);
    let mut power = ComplexMatrix::identity(n);
    let mut terms = 0;
    match f {
        DiskMap::Prefix(p) => {
            for (k, c) in p.coeffs().iter().enumerate() {
                if k > 0 {
                    power = power.matmul(a);
                }
                sum = &sum + &power.scale(*c);
                terms += 1;
            }
        }
        DiskMap::Blaschke(b) => {
            let mut series = BlaschkeSeries::new(b);
            let mut tail = 1.0 / (1.0 - r);
            loop {
                if terms > 0 {
                    power = power.matmul(a);
                }
                sum = &sum + &power.scale(series.next());
                terms += 1;
                tail *= r;
                let scale = sum.frobenius_norm() / (n as f64).sqrt();
                if tail <= 1e-14 * scale.max(1e-300) || tail == 0.0 {
                    break;
                }
                if terms >= MAX_TERMS {
                    return Err(Error::numeric("power series did not reach its tail bound"));
                }
            }
        }
    }
    let norm_fa = operator_norm(&sum)?;
    Ok(VonNeumannReport { norm_fa, terms, satisfied: norm_fa <= 1.0 + tol.von_neumann })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolarReport {
    /// `max_theta ||g(e^{i theta})^* g(e^{i theta}) - I||`.
    pub max_deviation: f64,
    /// `||g(0) - A||`.
    pub origin_residual: f64,
}

/// Unitary interpolant `g(z) = U (z + |A|)(I + z |A|)^{-1}` built from the
/// polar factorization `A = U |A|`.
pub fn polar_unitary_interpolant_check(a: &ComplexMatrix, grid: usize) -> Result<PolarReport> {
    a.validate()?;
    if grid == 0 {
        return Err(Error::input("grid must be positive"));
    }
    let d = svd(a)?;
    if d.s[0] >= 1.0 {
        return Err(Error::domain(format!("||A|| = {} is not below 1", d.s[0])));
    }
    let n = a.n();
    let u = d.u.matmul(&d.v.adjoint());
    let sigma: Vec<Complex64> = d.s.iter().map(|&s| Complex64::new(s, 0.0)).collect();
    let modulus = d.v.matmul(&ComplexMatrix::diagonal(&sigma)).matmul(&d.v.adjoint());
    let id = ComplexMatrix::identity(n);
    let g = |z: Complex64| -> Result<ComplexMatrix> {
        let num = &id.scale(z) + &modulus;
        let den = &id + &modulus.scale(z);
        Ok(u.matmul(&num).matmul(&inverse(&den)?))
    };
    let mut max_deviation = 0.0f64;
    for k in 0..grid {
        let gz = g(Complex64::from_polar(1.0, std::f64::consts::TAU * k as f64 / grid as f64))?;
        max_deviation = max_deviation.max(operator_norm(&(&gz.adjoint().matmul(&gz) - &id))?);
    }
    let origin_residual = operator_norm(&(&g(Complex64::new(0.0, 0.0))? - a))?;
    Ok(PolarReport { max_deviation, origin_residual })
}
