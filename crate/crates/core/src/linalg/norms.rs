use num_complex::Complex64;

use super::lu::Lu;
use super::matrix::{vec_norm, ComplexMatrix};
use super::svd::singular_values;
use crate::error::{Error, Result};
use crate::tolerances::Tolerances;

/// Deterministic start vector with no special alignment.
pub(crate) fn start_vector(n: usize) -> Vec<Complex64> {
    let mut s = 0x2545_f491_4f6c_dd1du64;
    let mut next = || {
        s ^= s << 13;
        s ^= s >> 7;
        s ^= s << 17;
        (s >> 11) as f64 / (1u64 << 53) as f64 + 0.25
    };
    let v: Vec<Complex64> = (0..n).map(|_| Complex64::new(next(), next() - 0.75)).collect();
    let norm = vec_norm(&v);
    v.into_iter().map(|z| z / norm).collect()
}

/// Largest singular value.
pub fn operator_norm(a: &ComplexMatrix) -> Result<f64> {
    operator_norm_with(a, &Tolerances::default())
}

pub fn operator_norm_with(a: &ComplexMatrix, tol: &Tolerances) -> Result<f64> {
    a.validate()?;
    if a.max_abs() == 0.0 {
        return Ok(0.0);
    }
    let adj = a.adjoint();
    match power_iteration(|x| adj.mul_vec(&a.mul_vec(x)), a.n(), tol) {
        Some(q) => Ok(q.sqrt()),
        None => Ok(singular_values(a)?[0]),
    }
}

/// Power iteration for the top eigenvalue of a positive semidefinite map.
///
/// Returns `None` on stagnation. Convergence requires both a small relative
/// change of the Rayleigh quotient and a small extrapolated remaining error
/// `delta * r / (1 - r)` where `r` is the observed contraction of successive
/// changes.
pub(crate) fn power_iteration(
    apply: impl Fn(&[Complex64]) -> Vec<Complex64>,
    n: usize,
    tol: &Tolerances,
) -> Option<f64> {
    let mut x = start_vector(n);
    let mut q_old = 0.0;
    let mut delta_old = f64::INFINITY;
    for it in 0..tol.power_max_iter {
        let w = apply(&x);
        let q: f64 = x.iter().zip(&w).map(|(a, b)| (a.conj() * b).re).sum();
        let wn = vec_norm(&w);
        if wn == 0.0 {
            return Some(0.0);
        }
        let delta = (q - q_old).abs();
        if it > 0 {
            let rel = delta / q.abs().max(f64::MIN_POSITIVE);
            let r = if delta_old > 0.0 && delta_old.is_finite() { delta / delta_old } else { 0.0 };
            if rel <= tol.power_rel_change {
                let remaining = if r < 1.0 { rel * r / (1.0 - r) } else { f64::INFINITY };
                if remaining <= 10.0 * tol.power_rel_change || delta == 0.0 {
                    return Some(q);
                }
            }
            if it > 50 && r > 0.999_9 && rel > 1e-6 {
                return None;
            }
        }
        q_old = q;
        delta_old = delta;
        x = w.into_iter().map(|z| z / wn).collect();
    }
    None
}

/// `|| (A - z)^{-1} ||`.
pub fn resolvent_norm(a: &ComplexMatrix, z: Complex64) -> Result<f64> {
    resolvent_norm_with(a, z, &Tolerances::default())
}

pub fn resolvent_norm_with(a: &ComplexMatrix, z: Complex64, tol: &Tolerances) -> Result<f64> {
    a.validate()?;
    let shifted = a.shift(z);
    let scale = a.max_abs().max(z.norm()).max(f64::MIN_POSITIVE);
    let lu = Lu::factor(&shifted, tol.singular * scale / shifted.max_abs().max(f64::MIN_POSITIVE))
        .map_err(|e| match e {
            Error::Singular(m) => Error::singular(format!("z = {z} is in the spectrum: {m}")),
            other => other,
        })?;
    operator_norm_with(&lu.inverse(), tol)
}
