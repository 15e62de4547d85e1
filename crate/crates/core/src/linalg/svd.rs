//! One-sided Jacobi singular value decomposition.

use num_complex::Complex64;

use super::matrix::{dot, vec_norm, ComplexMatrix};
use crate::error::{Error, Result};

/// `A = U diag(s) V^*`, singular values in descending order.
#[derive(Debug, Clone)]
pub struct Svd {
    pub u: ComplexMatrix,
    pub s: Vec<f64>,
    pub v: ComplexMatrix,
}

const MAX_SWEEPS: usize = 80;

/// Orthogonalizes `cols` in place by plane rotations, applying the same
/// rotations to `v` when given. Returns the number of sweeps used.
fn jacobi_columns(cols: &mut [Vec<Complex64>], mut v: Option<&mut [Vec<Complex64>]>) -> Result<usize> {
    let k = cols.len();
    // columns below eps * ||A||_F are numerically zero and are left alone
    let negligible = f64::EPSILON.powi(2) * cols.iter().flatten().map(|z| z.norm_sqr()).sum::<f64>();
    for sweep in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..k {
            for q in p + 1..k {
                let alpha: f64 = cols[p].iter().map(|z| z.norm_sqr()).sum();
                let beta: f64 = cols[q].iter().map(|z| z.norm_sqr()).sum();
                let gamma = dot(&cols[p], &cols[q]);
                let g = gamma.norm();
                if g == 0.0 || g <= f64::EPSILON * (alpha * beta).sqrt() || alpha.min(beta) <= negligible {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (2.0 * g);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                let ph = (gamma / g).conj();
                rotate(cols, p, q, c, s, ph);
                if let Some(v) = v.as_deref_mut() {
                    rotate(v, p, q, c, s, ph);
                }
            }
        }
        if !rotated {
            return Ok(sweep + 1);
        }
    }
    Err(Error::numeric("Jacobi SVD did not converge"))
}

#[inline]
fn rotate(cols: &mut [Vec<Complex64>], p: usize, q: usize, c: f64, s: f64, ph: Complex64) {
    let (lo, hi) = cols.split_at_mut(q);
    let (cp, cq) = (&mut lo[p], &mut hi[0]);
    for (x, y) in cp.iter_mut().zip(cq.iter_mut()) {
        let yq = ph * *y;
        let xp = *x;
        *x = xp * c - yq * s;
        *y = xp * s + yq * c;
    }
}

/// Singular values of the matrix whose columns are `cols`, descending.
pub fn singular_values_of_columns(cols: &[Vec<Complex64>]) -> Result<Vec<f64>> {
    let mut w = cols.to_vec();
    jacobi_columns(&mut w, None)?;
    let mut s: Vec<f64> = w.iter().map(|c| vec_norm(c)).collect();
    s.sort_by(|a, b| b.total_cmp(a));
    Ok(s)
}

pub fn singular_values(a: &ComplexMatrix) -> Result<Vec<f64>> {
    a.validate()?;
    let cols: Vec<Vec<Complex64>> = (0..a.n()).map(|j| a.column(j)).collect();
    singular_values_of_columns(&cols)
}

/// Full SVD; `U` is completed to a unitary when `A` is rank deficient.
pub fn svd(a: &ComplexMatrix) -> Result<Svd> {
    a.validate()?;
    let n = a.n();
    let mut w: Vec<Vec<Complex64>> = (0..n).map(|j| a.column(j)).collect();
    let mut v: Vec<Vec<Complex64>> = (0..n)
        .map(|j| {
            let mut e = vec![Complex64::new(0.0, 0.0); n];
            e[j] = Complex64::new(1.0, 0.0);
            e
        })
        .collect();
    jacobi_columns(&mut w, Some(&mut v))?;

    let norms: Vec<f64> = w.iter().map(|c| vec_norm(c)).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| norms[j].total_cmp(&norms[i]));
    let smax = norms.iter().cloned().fold(0.0, f64::max);
    let floor = smax * n as f64 * f64::EPSILON;

    let s: Vec<f64> = order.iter().map(|&j| norms[j]).collect();
    let mut ucols: Vec<Vec<Complex64>> = Vec::with_capacity(n);
    let mut vcols: Vec<Vec<Complex64>> = Vec::with_capacity(n);
    for &j in &order {
        vcols.push(v[j].clone());
        if norms[j] > floor {
            ucols.push(w[j].iter().map(|z| z / norms[j]).collect());
        } else {
            ucols.push(Vec::new());
        }
    }
    complete_orthonormal(&mut ucols, n);

    let u = ComplexMatrix::from_fn(n, |i, j| ucols[j][i]);
    let v = ComplexMatrix::from_fn(n, |i, j| vcols[j][i]);
    Ok(Svd { u, s, v })
}

/// Fills empty entries of `cols` with unit vectors orthogonal to the rest.
fn complete_orthonormal(cols: &mut [Vec<Complex64>], n: usize) {
    let mut candidate = 0;
    for j in 0..cols.len() {
        if !cols[j].is_empty() {
            continue;
        }
        loop {
            let mut e = vec![Complex64::new(0.0, 0.0); n];
            e[candidate % n] = Complex64::new(1.0, 0.0);
            candidate += 1;
            for _ in 0..2 {
                for other in cols.iter().filter(|c| !c.is_empty()) {
                    let proj = dot(other, &e);
                    for (x, o) in e.iter_mut().zip(other) {
                        *x -= proj * o;
                    }
                }
            }
            let norm = vec_norm(&e);
            if norm > 0.5 {
                cols[j] = e.iter().map(|z| z / norm).collect();
                break;
            }
            assert!(candidate < 4 * n + 4, "basis completion failed");
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reconstructs_matrix() {
        let n = 6;
        let a = ComplexMatrix::from_fn(n, |i, j| Complex64::new((i * j) as f64 % 3.0 - 1.0, (i + 2 * j) as f64 * 0.1));
        let d = svd(&a).unwrap();
        let sigma = ComplexMatrix::diagonal(&d.s.iter().map(|&x| Complex64::new(x, 0.0)).collect::<Vec<_>>());
        let back = d.u.matmul(&sigma).matmul(&d.v.adjoint());
        assert!((&back - &a).max_abs() < 1e-13);
        assert!(d.u.unitarity_defect() < 1e-13);
        assert!(d.v.unitarity_defect() < 1e-13);
        assert!(d.s.windows(2).all(|w| w[0] >= w[1]));
    }

    #[test]
    fn rank_deficient_gets_unitary_u() {
        let a = ComplexMatrix::from_real_rows(&[vec![1.0, 1.0, 0.0], vec![1.0, 1.0, 0.0], vec![0.0, 0.0, 0.0]]).unwrap();
        let d = svd(&a).unwrap();
        assert!((d.s[0] - 2.0).abs() < 1e-14);
        assert!(d.s[1].abs() < 1e-14 && d.s[2] == 0.0);
        assert!(d.u.unitarity_defect() < 1e-13);
    }

    #[test]
    fn tall_columns() {
        let cols = vec![
            vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0)],
            vec![Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)],
        ];
        let s = singular_values_of_columns(&cols).unwrap();
        // Gram matrix [[1,1],[1,2]] has eigenvalues (3 +- sqrt 5)/2.
        assert!((s[0] * s[0] - (3.0 + 5f64.sqrt()) / 2.0).abs() < 1e-14);
        assert!((s[1] * s[1] - (3.0 - 5f64.sqrt()) / 2.0).abs() < 1e-14);
    }
}
