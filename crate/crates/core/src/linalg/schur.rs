//! Hessenberg reduction and the implicitly shifted complex QR iteration.

use num_complex::Complex64;

use super::matrix::ComplexMatrix;
use crate::poly::Polynomial;
use crate::error::{Error, Result};
use crate::tolerances::Tolerances;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// `A = Q T Q^*` with `Q` unitary and `T` upper triangular.
#[derive(Debug, Clone)]
pub struct SchurForm {
    pub q: ComplexMatrix,
    pub t: ComplexMatrix,
}

impl SchurForm {
    pub fn eigenvalues(&self) -> Spectrum {
        Spectrum { eigenvalues: self.t.diag() }
    }

    /// `|| Q T Q^* - A ||_F`.
    pub fn residual(&self, a: &ComplexMatrix) -> f64 {
        (&self.q.matmul(&self.t).matmul(&self.q.adjoint()) - a).frobenius_norm()
    }
}

/// Eigenvalues listed with algebraic multiplicity, in no particular order.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    pub eigenvalues: Vec<Complex64>,
}

impl Spectrum {
    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    pub fn distance_to(&self, z: Complex64) -> f64 {
        self.eigenvalues.iter().map(|l| (l - z).norm()).fold(f64::INFINITY, f64::min)
    }

    pub fn spectral_radius(&self) -> f64 {
        self.eigenvalues.iter().map(|l| l.norm()).fold(0.0, f64::max)
    }
}

/// Reduces `a` to upper Hessenberg form `H = Q^* A Q`.
///
/// Columns that are already zero below the subdiagonal are left untouched,
/// so triangular inputs pass through exactly.
pub fn hessenberg(a: &ComplexMatrix, want_q: bool) -> (ComplexMatrix, Option<ComplexMatrix>) {
    let n = a.n();
    let mut h = a.clone();
    let mut q = want_q.then(|| ComplexMatrix::identity(n));
    if n < 3 {
        return (h, q);
    }
    let mut v = vec![ZERO; n];
    for k in 0..n - 2 {
        let m = n - k - 1;
        let tail: f64 = (k + 2..n).map(|i| h[(i, k)].norm_sqr()).sum();
        if tail == 0.0 {
            continue;
        }
        let x0 = h[(k + 1, k)];
        let xnorm = (x0.norm_sqr() + tail).sqrt();
        let phase = if x0.norm() == 0.0 { Complex64::new(1.0, 0.0) } else { x0 / x0.norm() };
        let alpha = -phase * xnorm;
        v[0] = x0 - alpha;
        for i in 1..m {
            v[i] = h[(k + 1 + i, k)];
        }
        let vv: f64 = v[..m].iter().map(|z| z.norm_sqr()).sum();
        let beta = 2.0 / vv;
        // Left: rows k+1.., columns k+1.. (column k is set explicitly).
        for j in k + 1..n {
            let mut s = ZERO;
            for i in 0..m {
                s += v[i].conj() * h[(k + 1 + i, j)];
            }
            s *= beta;
            for i in 0..m {
                h[(k + 1 + i, j)] -= v[i] * s;
            }
        }
        h[(k + 1, k)] = alpha;
        for i in k + 2..n {
            h[(i, k)] = ZERO;
        }
        apply_reflector_right(&mut h, &v[..m], beta, k + 1);
        if let Some(q) = q.as_mut() {
            apply_reflector_right(q, &v[..m], beta, k + 1);
        }
    }
    (h, q)
}

fn apply_reflector_right(a: &mut ComplexMatrix, v: &[Complex64], beta: f64, off: usize) {
    let n = a.n();
    for r in 0..n {
        let row = a.row_mut(r);
        let mut s = ZERO;
        for (l, vl) in v.iter().enumerate() {
            s += row[off + l] * vl;
        }
        s *= beta;
        for (l, vl) in v.iter().enumerate() {
            row[off + l] -= s * vl.conj();
        }
    }
}

/// Complex Givens rotation `G = [[c, s], [-conj(s), c]]` with `G [f; g] = [r; 0]`.
#[inline]
fn givens(f: Complex64, g: Complex64) -> (f64, Complex64, Complex64) {
    let gn = g.norm();
    if gn == 0.0 {
        return (1.0, ZERO, f);
    }
    let fnorm = f.norm();
    if fnorm == 0.0 {
        return (0.0, g.conj() / gn, Complex64::new(gn, 0.0));
    }
    let norm = fnorm.hypot(gn);
    let phase = f / fnorm;
    (fnorm / norm, phase * g.conj() / norm, phase * norm)
}

#[inline]
fn l1(z: Complex64) -> f64 {
    z.re.abs() + z.im.abs()
}

/// Eigenvalue of the trailing 2x2 block closest to its last diagonal entry.
fn wilkinson_shift(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Complex64 {
    let bc = b * c;
    if bc.norm() == 0.0 {
        return d;
    }
    let p = (a - d) * 0.5;
    let disc = (p * p + bc).sqrt();
    let den = if (p + disc).norm() >= (p - disc).norm() { p + disc } else { p - disc };
    if den.norm() == 0.0 {
        d
    } else {
        d - bc / den
    }
}

/// Drives an upper Hessenberg matrix to triangular form in place.
///
/// With `want_t` the full triangular factor is maintained; otherwise only the
/// active window is updated and only the diagonal is meaningful. Rotations
/// are accumulated into `z` when given.
pub(crate) fn hessenberg_qr(
    h: &mut ComplexMatrix,
    mut z: Option<&mut ComplexMatrix>,
    want_t: bool,
    norm_est: f64,
    tol: &Tolerances,
) -> Result<()> {
    let n = h.n();
    if n < 2 || norm_est == 0.0 {
        return Ok(());
    }
    let thresh = tol.deflation * norm_est;
    let budget = tol.qr_iterations_per_n.max(1) * n;
    let mut used = 0usize;
    let mut restarted = false;
    let mut pending_random = false;
    let mut its = 0usize;
    let mut rng_state = 0x9e37_79b9_7f4a_7c15u64 ^ n as u64;
    let mut hi = n - 1;

    while hi > 0 {
        let mut lo = hi;
        while lo > 0 {
            let sub = l1(h[(lo, lo - 1)]);
            let diag = l1(h[(lo, lo)]) + l1(h[(lo - 1, lo - 1)]);
            if sub <= thresh || sub <= f64::EPSILON * diag {
                h[(lo, lo - 1)] = ZERO;
                break;
            }
            lo -= 1;
        }
        if lo == hi {
            hi -= 1;
            its = 0;
            continue;
        }

        used += 1;
        its += 1;
        if used > budget {
            if restarted {
                return Err(Error::numeric(format!(
                    "QR iteration did not converge: {} eigenvalues left after {} sweeps and one restart",
                    hi + 1,
                    2 * budget
                )));
            }
            restarted = true;
            pending_random = true;
            used = 0;
        }

        let sigma = if pending_random {
            pending_random = false;
            rng_state = rng_state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let angle = (rng_state >> 11) as f64 / (1u64 << 53) as f64 * std::f64::consts::TAU;
            h[(hi, hi)] + Complex64::from_polar(h[(hi, hi - 1)].norm().max(thresh), angle)
        } else if its.is_multiple_of(10) {
            h[(hi, hi)] + 0.75 * h[(hi, hi - 1)].norm()
        } else {
            wilkinson_shift(h[(hi - 1, hi - 1)], h[(hi - 1, hi)], h[(hi, hi - 1)], h[(hi, hi)])
        };

        let (col_end, row_start) = if want_t { (n, 0) } else { (hi + 1, lo) };
        for k in lo..hi {
            let (f, g) = if k == lo {
                (h[(lo, lo)] - sigma, h[(lo + 1, lo)])
            } else {
                (h[(k, k - 1)], h[(k + 1, k - 1)])
            };
            let (c, s, r) = givens(f, g);
            if k > lo {
                h[(k, k - 1)] = r;
                h[(k + 1, k - 1)] = ZERO;
            }
            let sc = s.conj();
            for j in k..col_end {
                let x = h[(k, j)];
                let y = h[(k + 1, j)];
                h[(k, j)] = x * c + s * y;
                h[(k + 1, j)] = y * c - sc * x;
            }
            let last = (k + 2).min(hi);
            for i in row_start..=last {
                let x = h[(i, k)];
                let y = h[(i, k + 1)];
                h[(i, k)] = x * c + y * sc;
                h[(i, k + 1)] = y * c - x * s;
            }
            if let Some(z) = z.as_deref_mut() {
                for i in 0..n {
                    let x = z[(i, k)];
                    let y = z[(i, k + 1)];
                    z[(i, k)] = x * c + y * sc;
                    z[(i, k + 1)] = y * c - x * s;
                }
            }
        }
    }
    Ok(())
}

pub fn eigenvalues(a: &ComplexMatrix) -> Result<Spectrum> {
    eigenvalues_with(a, &Tolerances::default())
}

pub fn eigenvalues_with(a: &ComplexMatrix, tol: &Tolerances) -> Result<Spectrum> {
    a.validate()?;
    let norm = a.norm_bound();
    let (h, _) = hessenberg(a, false);
    hessenberg_eigenvalues(h, norm, tol)
}

/// Coefficients of `det(z - A)`, lowest degree first, through the
/// determinant recursion for the leading blocks of the Hessenberg form.
pub fn characteristic_polynomial(a: &ComplexMatrix) -> Result<Polynomial> {
    a.validate()?;
    let n = a.n();
    let (h, _) = hessenberg(a, false);
    // p[k] = det(z - H[..k, ..k])
    let mut p: Vec<Vec<Complex64>> = vec![vec![Complex64::new(1.0, 0.0)]];
    for k in 1..=n {
        let mut next = vec![ZERO; k + 1];
        for (j, c) in p[k - 1].iter().enumerate() {
            next[j + 1] += c;
            next[j] -= h[(k - 1, k - 1)] * c;
        }
        let mut sub = Complex64::new(1.0, 0.0);
        for i in (1..k).rev() {
            sub *= h[(i, i - 1)];
            let w = h[(i - 1, k - 1)] * sub;
            for (j, c) in p[i - 1].iter().enumerate() {
                next[j] -= w * c;
            }
        }
        p.push(next);
    }
    Ok(Polynomial::new(p.pop().expect("nonempty")))
}

/// Eigenvalues of a matrix that is already upper Hessenberg.
pub fn hessenberg_eigenvalues(mut h: ComplexMatrix, norm_est: f64, tol: &Tolerances) -> Result<Spectrum> {
    hessenberg_qr(&mut h, None, false, norm_est, tol)?;
    Ok(Spectrum { eigenvalues: h.diag() })
}

pub fn schur_triangularize(a: &ComplexMatrix) -> Result<SchurForm> {
    schur_triangularize_with(a, &Tolerances::default())
}

pub fn schur_triangularize_with(a: &ComplexMatrix, tol: &Tolerances) -> Result<SchurForm> {
    a.validate()?;
    let norm = a.norm_bound();
    let (h, q) = hessenberg(a, true);
    hessenberg_schur(h, q.expect("requested"), norm, tol)
}

/// Schur form of an upper Hessenberg `h` with `A = q h q^*`.
pub fn hessenberg_schur(
    mut h: ComplexMatrix,
    mut q: ComplexMatrix,
    norm_est: f64,
    tol: &Tolerances,
) -> Result<SchurForm> {
    hessenberg_qr(&mut h, Some(&mut q), true, norm_est, tol)?;
    let n = h.n();
    for i in 0..n {
        for j in 0..i {
            h[(i, j)] = ZERO;
        }
    }
    Ok(SchurForm { q, t: h })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn lcg_matrix(n: usize, seed: u64) -> ComplexMatrix {
        let mut s = seed;
        let mut next = || {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (s >> 11) as f64 / (1u64 << 53) as f64 - 0.5
        };
        ComplexMatrix::from_fn(n, |_, _| c(next(), next()))
    }

    #[test]
    fn characteristic_polynomial_from_roots() {
        let roots = [c(0.5, 0.1), c(-1.0, 0.0), c(0.0, 2.0), c(0.3, -0.7)];
        let p = Polynomial::from_roots(&roots);
        let q = lcg_matrix(4, 3);
        let similar = {
            let t = ComplexMatrix::from_fn(4, |j, k| if j == k { roots[j] } else if k > j { c(0.2 * (j + k) as f64, -0.1) } else { c(0.0, 0.0) });
            let inv = crate::linalg::inverse(&q).unwrap();
            q.matmul(&t).matmul(&inv)
        };
        assert!(characteristic_polynomial(&similar).unwrap().max_coeff_diff(&p) < 1e-10);
        let a = ComplexMatrix::from_fn(2, |j, k| c((2 * j + k + 1) as f64, 0.0));
        let expected = Polynomial::from_real(&[1.0 * 4.0 - 2.0 * 3.0, -5.0, 1.0]);
        assert!(characteristic_polynomial(&a).unwrap().max_coeff_diff(&expected) < 1e-14);
    }

    #[test]
    fn hessenberg_is_similarity() {
        let a = lcg_matrix(7, 3);
        let (h, q) = hessenberg(&a, true);
        let q = q.unwrap();
        for i in 0..7usize {
            for j in 0..i.saturating_sub(1) {
                assert_eq!(h[(i, j)], ZERO);
            }
        }
        assert!(q.unitarity_defect() < 1e-13);
        let back = q.matmul(&h).matmul(&q.adjoint());
        assert!((&back - &a).max_abs() < 1e-13);
    }

    #[test]
    fn givens_annihilates() {
        let (cs, s, r) = givens(c(1.0, 2.0), c(-0.5, 3.0));
        let top = c(1.0, 2.0) * cs + s * c(-0.5, 3.0);
        let bottom = c(-0.5, 3.0) * cs - s.conj() * c(1.0, 2.0);
        assert!((top - r).norm() < 1e-15);
        assert!(bottom.norm() < 1e-15);
    }

    #[test]
    fn triangular_input_returns_exact_diagonal() {
        let diag = [c(0.3, 0.1), c(-1.0, 0.0), c(0.3, 0.1), c(2.0, -2.0)];
        let mut a = ComplexMatrix::diagonal(&diag);
        a[(0, 3)] = c(5.0, 1.0);
        a[(1, 2)] = c(-2.0, 0.5);
        let spec = eigenvalues(&a).unwrap();
        assert_eq!(spec.eigenvalues, diag.to_vec());
    }

    #[test]
    fn companion_roots() {
        // (z-1)(z-2)(z-3) = z^3 - 6z^2 + 11z - 6
        let a = ComplexMatrix::from_real_rows(&[
            vec![6.0, -11.0, 6.0],
            vec![1.0, 0.0, 0.0],
            vec![0.0, 1.0, 0.0],
        ])
        .unwrap();
        let mut ev: Vec<f64> = eigenvalues(&a).unwrap().eigenvalues.iter().map(|z| z.re).collect();
        ev.sort_by(|a, b| a.partial_cmp(b).unwrap());
        for (x, want) in ev.iter().zip([1.0, 2.0, 3.0]) {
            assert!((x - want).abs() < 1e-12, "{ev:?}");
        }
    }

    #[test]
    fn schur_residual_small_for_random_matrices() {
        for (n, seed) in [(1, 1), (2, 2), (6, 3), (20, 4), (45, 5)] {
            let a = lcg_matrix(n, seed);
            let s = schur_triangularize(&a).unwrap();
            assert!(s.t.is_upper_triangular());
            assert!(s.q.unitarity_defect() < 1e-12 * n as f64);
            assert!(s.residual(&a) < 1e-12 * n as f64 * a.frobenius_norm());
        }
    }

    #[test]
    fn rotation_matrix_converges() {
        // Exceptional shifts are needed: Wilkinson stalls on real rotations.
        let a = ComplexMatrix::from_real_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
        let mut ev: Vec<f64> = eigenvalues(&a).unwrap().eigenvalues.iter().map(|z| z.re).collect();
        ev.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert!((ev[0] + 1.0).abs() < 1e-14 && (ev[1] - 1.0).abs() < 1e-14);

        let n = 12;
        let p = ComplexMatrix::from_fn(n, |i, j| if (i + 1) % n == j { c(1.0, 0.0) } else { ZERO });
        let spec = eigenvalues(&p).unwrap();
        for z in &spec.eigenvalues {
            assert!((z.powu(n as u32) - 1.0).norm() < 1e-12);
        }
    }
}
