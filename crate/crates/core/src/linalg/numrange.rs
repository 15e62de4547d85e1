//! Support function of the numerical range.

use num_complex::Complex64;

use super::hermitian::hermitian_eigen;
use super::matrix::{dot, ComplexMatrix};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SupportPoint {
    pub angle: f64,
    /// `max Re(e^{-i angle} w)` over `w` in the numerical range.
    pub support: f64,
    /// A point of the numerical range where the maximum is attained.
    pub boundary: Complex64,
}

pub fn numerical_range_support(a: &ComplexMatrix, angles: &[f64]) -> Result<Vec<SupportPoint>> {
    if angles.is_empty() {
        return Err(Error::input("angle grid is empty"));
    }
    a.validate()?;
    let n = a.n();
    angles
        .iter()
        .map(|&angle| {
            let rot = Complex64::from_polar(1.0, -angle);
            let h = ComplexMatrix::from_fn(n, |i, j| (rot * a[(i, j)] + (rot * a[(j, i)]).conj()) * 0.5);
            let eig = hermitian_eigen(&h)?;
            let phi = eig.vector(n - 1);
            let boundary = dot(&phi, &a.mul_vec(&phi));
            Ok(SupportPoint { angle, support: eig.values[n - 1], boundary })
        })
        .collect()
}

/// Uniform grid of `m` angles in `[0, 2 pi)`.
pub fn angle_grid(m: usize) -> Vec<f64> {
    (0..m).map(|k| std::f64::consts::TAU * k as f64 / m as f64).collect()
}

/// Signed distance of `z` outside the numerical range as seen from the
/// sampled support lines: `max_theta Re(e^{-i theta} z) - h(theta)`.
/// Negative values mean `z` lies inside every sampled half-plane.
pub fn support_margin(points: &[SupportPoint], z: Complex64) -> f64 {
    points
        .iter()
        .map(|p| (Complex64::from_polar(1.0, -p.angle) * z).re - p.support)
        .fold(f64::NEG_INFINITY, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scalar_matrix_is_a_point() {
        let a = ComplexMatrix::from_rows(&[vec![Complex64::new(0.3, -0.7)]]).unwrap();
        for p in numerical_range_support(&a, &angle_grid(16)).unwrap() {
            assert!((p.boundary - a[(0, 0)]).norm() < 1e-15);
        }
    }

    #[test]
    fn empty_grid_rejected() {
        assert!(numerical_range_support(&ComplexMatrix::identity(2), &[]).is_err());
    }

    #[test]
    fn support_is_attained_by_boundary_point() {
        let a = ComplexMatrix::from_fn(4, |i, j| Complex64::new((i + 2 * j) as f64 * 0.1, (j as f64 - i as f64) * 0.2));
        for p in numerical_range_support(&a, &angle_grid(32)).unwrap() {
            let proj = (Complex64::from_polar(1.0, -p.angle) * p.boundary).re;
            assert!((proj - p.support).abs() < 1e-12);
        }
    }
}
