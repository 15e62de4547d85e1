use std::f64::consts::TAU;

use num_complex::Complex64;

use super::report::BoundReport;
use crate::error::{Error, Result};
use crate::extremal::c_of_n;
use crate::linalg::{
    angle_grid, eigenvalues_with, hermitian_eigen, inverse, minimal_polynomial_degree, numerical_range_support,
    operator_norm, operator_norm_with, resolvent_norm_with, support_margin, ComplexMatrix, Spectrum,
};
use crate::tolerances::Tolerances;

const ONE: Complex64 = Complex64::new(1.0, 0.0);
const MIN_DIST: f64 = 1e-12;

fn spectrum_gap(a: &ComplexMatrix, z: Complex64, tol: &Tolerances) -> Result<(Spectrum, f64)> {
    let spectrum = eigenvalues_with(a, tol)?;
    let dist = spectrum.distance_to(z);
    if !(dist > MIN_DIST) {
        return Err(Error::singular(format!("z = {z} is within {MIN_DIST:e} of the spectrum")));
    }
    Ok((spectrum, dist))
}

pub fn check_theorem1(a: &ComplexMatrix, z: Complex64) -> Result<BoundReport> {
    check_theorem1_with(a, z, &Tolerances::default())
}

/// `dist(z, spec A) ||(A - z)^{-1}|| <= cot(pi/4n)` for `|z| >= ||A||`.
pub fn check_theorem1_with(a: &ComplexMatrix, z: Complex64, tol: &Tolerances) -> Result<BoundReport> {
    a.validate()?;
    let norm = operator_norm_with(a, tol)?;
    if z.norm() < norm - 1e-12 {
        return Err(Error::domain(format!("|z| = {} is below ||A|| = {norm}", z.norm())));
    }
    let (_, dist) = spectrum_gap(a, z, tol)?;
    let res = resolvent_norm_with(a, z, tol)?;
    Ok(BoundReport::new(a.n(), z, dist, res, c_of_n(a.n()), tol.report))
}

/// Largest `Re(e^{-i theta} z) - h(theta)`: the grid maximum refined by a
/// golden-section search around the best grid angle.
pub fn numerical_range_margin(a: &ComplexMatrix, z: Complex64, grid: usize) -> Result<f64> {
    let points = numerical_range_support(a, &angle_grid(grid))?;
    let coarse = support_margin(&points, z);
    let best = points
        .iter()
        .max_by(|p, q| {
            let mp = (Complex64::from_polar(1.0, -p.angle) * z).re - p.support;
            let mq = (Complex64::from_polar(1.0, -q.angle) * z).re - q.support;
            mp.total_cmp(&mq)
        })
        .expect("grid is non-empty")
        .angle;
    let f = |theta: f64| -> Result<f64> {
        let p = numerical_range_support(a, &[theta])?;
        Ok(support_margin(&p, z))
    };
    let step = TAU / grid as f64;
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let (mut lo, mut hi) = (best - step, best + step);
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let (mut f1, mut f2) = (f(x1)?, f(x2)?);
    for _ in 0..40 {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2)?;
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1)?;
        }
    }
    Ok(coarse.max(f1).max(f2))
}

pub fn check_numerical_range_variant(a: &ComplexMatrix, z: Complex64) -> Result<BoundReport> {
    check_numerical_range_variant_with(a, z, &Tolerances::default())
}

/// The same bound for any `z` outside the interior of `Num(A)`.
pub fn check_numerical_range_variant_with(a: &ComplexMatrix, z: Complex64, tol: &Tolerances) -> Result<BoundReport> {
    a.validate()?;
    let margin = numerical_range_margin(a, z, 256)?;
    if margin < -1e-10 {
        return Err(Error::domain(format!("z = {z} lies inside Num(A) (margin {margin:e})")));
    }
    let (_, dist) = spectrum_gap(a, z, tol)?;
    let res = resolvent_norm_with(a, z, tol)?;
    Ok(BoundReport::new(a.n(), z, dist, res, c_of_n(a.n()), tol.report))
}

/// Half-plane form: `Re(A) >= 0` and `z = 0`.
pub fn check_half_plane_variant(a: &ComplexMatrix, tol: &Tolerances) -> Result<BoundReport> {
    a.validate()?;
    let h = ComplexMatrix::from_fn(a.n(), |i, j| (a[(i, j)] + a[(j, i)].conj()) * 0.5);
    let lowest = hermitian_eigen(&h)?.values[0];
    if lowest < -1e-10 {
        return Err(Error::domain(format!("Re(A) has eigenvalue {lowest:e} < 0")));
    }
    check_numerical_range_variant_with(a, Complex64::new(0.0, 0.0), tol)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MinpolyReport {
    /// Checked against `cot(pi/4m)`.
    pub report: BoundReport,
    pub degree: usize,
    pub weak_constant: f64,
    pub weak_satisfied: bool,
    pub rank_warning: bool,
}

/// The bound with `n` replaced by the degree `m` of the minimal polynomial,
/// plus the weaker constant `2m`. `A` is read as `A / z` against the point 1.
pub fn check_minpoly_variant(a: &ComplexMatrix, z: Complex64, tol: &Tolerances) -> Result<MinpolyReport> {
    a.validate()?;
    let norm = operator_norm_with(a, tol)?;
    if z.norm() < norm - 1e-12 {
        return Err(Error::domain(format!("A / z is not a contraction: |z| = {} < {norm}", z.norm())));
    }
    let (_, dist) = spectrum_gap(a, z, tol)?;
    let res = resolvent_norm_with(a, z, tol)?;
    let m = minimal_polynomial_degree(a, tol.rank)?;
    let report = BoundReport::new(a.n(), z, dist, res, c_of_n(m.degree), tol.report);
    let weak_constant = 2.0 * m.degree as f64;
    Ok(MinpolyReport {
        report,
        degree: m.degree,
        weak_constant,
        weak_satisfied: report.ratio <= weak_constant + tol.report,
        rank_warning: m.warning,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerBoundProfile {
    /// `max_{m <= m_max} ||A^m||`.
    pub c: f64,
    pub m_max: usize,
    pub converged: bool,
}

fn is_normal(a: &ComplexMatrix) -> bool {
    let ah = a.adjoint();
    let comm = &ah.matmul(a) - &a.matmul(&ah);
    comm.frobenius_norm() <= 1e-12 * a.frobenius_norm().powi(2).max(f64::MIN_POSITIVE)
}

/// Power bound truncated at `m_max`. Converged when the powers have decayed
/// below `1e-3 c` with spectral radius below 1, or when `A` is normal with
/// spectral radius at most 1 (then every power is bounded by 1).
pub fn power_bound_profile(a: &ComplexMatrix, m_max: usize) -> Result<PowerBoundProfile> {
    a.validate()?;
    let rho = eigenvalues_with(a, &Tolerances::default())?.spectral_radius();
    if rho >= 1.0 + 1e-12 {
        return Ok(PowerBoundProfile { c: f64::INFINITY, m_max, converged: false });
    }
    let mut c: f64 = 1.0;
    let mut power = ComplexMatrix::identity(a.n());
    let mut last = 1.0;
    for _ in 0..m_max {
        power = power.matmul(a);
        last = operator_norm(&power)?;
        c = c.max(last);
    }
    let converged = (rho < 1.0 && last < 1e-3 * c) || is_normal(a);
    Ok(PowerBoundProfile { c, m_max, converged })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerBoundedReport {
    /// `constant = c (3n)^{3/2} / dist^{1/2}`, the bound on `dist ||(1 - A)^{-1}||`.
    pub report: BoundReport,
    pub profile: PowerBoundProfile,
    /// `p` with `||(1 - A)^{-1}|| = c (3n / dist)^p`.
    pub fitted_exponent: f64,
}

/// `||(1 - A)^{-1}|| <= c (3n)^{3/2} dist(1, spec A)^{-3/2}` for power
/// bounded `A` with `c = sup ||A^m||`.
pub fn check_power_bounded_variant(a: &ComplexMatrix, tol: &Tolerances) -> Result<PowerBoundedReport> {
    let mut horizon = 64;
    let profile = loop {
        let p = power_bound_profile(a, horizon)?;
        if p.converged || horizon >= 16_384 || p.c.is_infinite() {
            break p;
        }
        horizon *= 4;
    };
    if !profile.converged {
        return Err(Error::domain(format!("power bound did not converge by m = {}", profile.m_max)));
    }
    let (_, dist) = spectrum_gap(a, ONE, tol)?;
    let res = resolvent_norm_with(a, ONE, tol)?;
    let n = a.n() as f64;
    let constant = profile.c * (3.0 * n).powf(1.5) / dist.sqrt();
    let report = BoundReport::new(a.n(), ONE, dist, res, constant, tol.report);
    let fitted_exponent = (res / profile.c).ln() / (3.0 * n / dist).ln();
    Ok(PowerBoundedReport { report, profile, fitted_exponent })
}

/// Inverse of an upper triangular matrix by back substitution; entries
/// below the diagonal are exact zeros.
fn upper_inverse(t: &ComplexMatrix) -> Result<ComplexMatrix> {
    let n = t.n();
    let mut x = ComplexMatrix::zeros(n);
    for j in 0..n {
        for i in (0..=j).rev() {
            let mut s = if i == j { ONE } else { Complex64::new(0.0, 0.0) };
            for k in i + 1..=j {
                s -= t[(i, k)] * x[(k, j)];
            }
            if t[(i, i)].norm() == 0.0 {
                return Err(Error::singular("zero on the diagonal"));
            }
            x[(i, j)] = s / t[(i, i)];
        }
    }
    Ok(x)
}

fn require_triangular_contraction(t: &ComplexMatrix, tol: &Tolerances) -> Result<()> {
    t.validate()?;
    if !t.is_upper_triangular() {
        return Err(Error::input("matrix is not upper triangular"));
    }
    let norm = operator_norm_with(t, tol)?;
    if norm > 1.0 + tol.contraction_slack {
        return Err(Error::domain(format!("||T|| = {norm} exceeds 1")));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntrywiseReport {
    /// `max_{k < l} dist |R_kl|`, bounded by 2.
    pub max_upper: f64,
    /// `max_k dist |R_kk|`, bounded by 1.
    pub max_diagonal: f64,
    /// `max_{k > l} |R_kl|`, which must vanish.
    pub max_lower: f64,
    pub satisfied: bool,
}

/// Entry bounds on `R = (1 - T)^{-1}` for an upper triangular contraction.
pub fn entrywise_check(t: &ComplexMatrix, tol: &Tolerances) -> Result<EntrywiseReport> {
    require_triangular_contraction(t, tol)?;
    let n = t.n();
    let dist = t.diag().iter().map(|l| (ONE - l).norm()).fold(f64::INFINITY, f64::min);
    if !(dist > MIN_DIST) {
        return Err(Error::singular("1 is in the spectrum"));
    }
    let r = upper_inverse(&(&ComplexMatrix::identity(n) - t))?;
    let (mut max_upper, mut max_diagonal, mut max_lower) = (0.0f64, 0.0f64, 0.0f64);
    for k in 0..n {
        for l in 0..n {
            let v = r[(k, l)].norm();
            match k.cmp(&l) {
                std::cmp::Ordering::Less => max_upper = max_upper.max(dist * v),
                std::cmp::Ordering::Equal => max_diagonal = max_diagonal.max(dist * v),
                std::cmp::Ordering::Greater => max_lower = max_lower.max(v),
            }
        }
    }
    let satisfied = max_upper <= 2.0 + tol.report && max_diagonal <= 1.0 + tol.report && max_lower == 0.0;
    Ok(EntrywiseReport { max_upper, max_diagonal, max_lower, satisfied })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PositivityReport {
    /// Smallest eigenvalue of `C = R + R^* - 1`.
    pub min_eigenvalue: f64,
    /// `max_{j,k} |C_jk| - sqrt(C_jj C_kk)`.
    pub cauchy_schwarz_excess: f64,
    /// `max_j |C_jj - (1 - |l_j|^2) / |1 - l_j|^2|`.
    pub diagonal_error: f64,
    /// `max(1, max |C_jk|)`; tolerances are taken relative to it.
    pub scale: f64,
    pub satisfied: bool,
}

/// Positivity of `C = (1 - T)^{-1} + (1 - T^*)^{-1} - 1` for an upper
/// triangular contraction `T`, with its diagonal in closed form.
pub fn positivity_check(t: &ComplexMatrix, tol: &Tolerances) -> Result<PositivityReport> {
    require_triangular_contraction(t, tol)?;
    let n = t.n();
    let id = ComplexMatrix::identity(n);
    let r = upper_inverse(&(&id - t))?;
    let c = &(&r + &r.adjoint()) - &id;
    let scale = c.max_abs().max(1.0);
    let min_eigenvalue = hermitian_eigen(&c)?.values[0];
    let mut cauchy_schwarz_excess = f64::NEG_INFINITY;
    let mut diagonal_error = 0.0f64;
    for j in 0..n {
        let l = t[(j, j)];
        let expected = (1.0 - l.norm_sqr()) / (ONE - l).norm_sqr();
        diagonal_error = diagonal_error.max((c[(j, j)].re - expected).abs());
        for k in 0..n {
            let bound = (c[(j, j)].re.max(0.0) * c[(k, k)].re.max(0.0)).sqrt();
            cauchy_schwarz_excess = cauchy_schwarz_excess.max(c[(j, k)].norm() - bound);
        }
    }
    let floor = 1e-10 * scale;
    let satisfied = min_eigenvalue >= -floor && cauchy_schwarz_excess <= floor && diagonal_error <= floor;
    Ok(PositivityReport { min_eigenvalue, cauchy_schwarz_excess, diagonal_error, scale, satisfied })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CayleyReport {
    pub s: f64,
    /// `||(1 - sA)(1 + sA)^{-1}||`.
    pub norm_b: f64,
    /// Relative distance of `(1 - B)^{-1}` from `(A^{-1} + s) / 2s`.
    pub identity_residual: f64,
    pub satisfied: bool,
}

/// Cayley transform of an accretive `A` at parameter `s > 0`.
pub fn cayley_check(a: &ComplexMatrix, s: f64, tol: &Tolerances) -> Result<CayleyReport> {
    a.validate()?;
    if !(s > 0.0) {
        return Err(Error::input("s must be positive"));
    }
    let n = a.n();
    let id = ComplexMatrix::identity(n);
    let sa = a.scale_real(s);
    let b = (&id - &sa).matmul(&inverse(&(&id + &sa))?);
    let norm_b = operator_norm_with(&b, tol)?;
    let lhs = inverse(&(&id - &b))?;
    let rhs = (&inverse(a)? + &id.scale_real(s)).scale_real(0.5 / s);
    let identity_residual = operator_norm_with(&(&lhs - &rhs), tol)? / operator_norm_with(&rhs, tol)?;
    let satisfied = norm_b <= 1.0 + tol.contraction_slack && identity_residual <= 1e-8;
    Ok(CayleyReport { s, norm_b, identity_residual, satisfied })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extremal::{build, MatrixKind};
    use crate::toeplitz::a_family;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn scalar_matrix_has_ratio_one() {
        let a = ComplexMatrix::identity(4).scale_real(0.3);
        let r = check_theorem1(&a, ONE).unwrap();
        assert!((r.ratio - 1.0).abs() < 1e-12);
        assert!(r.satisfied);
        let r = check_theorem1(&ComplexMatrix::zeros(3), ONE).unwrap();
        assert!((r.ratio - 1.0).abs() < 1e-15);
    }

    #[test]
    fn near_extremal_family_is_close_to_the_constant() {
        let a = a_family(5, 0.999).unwrap();
        let r = check_theorem1(&a, ONE).unwrap();
        assert!(r.ratio >= 0.99 * c_of_n(5), "{}", r.ratio);
        assert!(r.satisfied);
    }

    #[test]
    fn bound_rejects_z_inside_norm_disk() {
        let a = ComplexMatrix::identity(2).scale_real(0.5);
        assert!(matches!(check_theorem1(&a, c(0.2, 0.0)), Err(Error::Domain(_))));
    }

    #[test]
    fn shift_at_half_is_extremal_for_n2() {
        // Num(N_2) is the disk of radius 1/2, and the ratio at z = 1/2 is 1 + sqrt 2.
        let n2 = build(MatrixKind::N, 2, None).unwrap();
        let r = check_numerical_range_variant(&n2, c(0.5, 0.0)).unwrap();
        assert!((r.ratio - (1.0 + 2f64.sqrt())).abs() < 1e-12);
        assert!(r.satisfied);
        assert!(matches!(check_numerical_range_variant(&n2, c(0.1, 0.1)), Err(Error::Domain(_))));
    }

    #[test]
    fn one_by_one_numerical_range() {
        let a = ComplexMatrix::from_rows(&[vec![c(0.2, 0.4)]]).unwrap();
        let r = check_numerical_range_variant(&a, c(-1.0, 3.0)).unwrap();
        assert!((r.ratio - 1.0).abs() < 1e-14);
    }

    #[test]
    fn minpoly_of_scalar_and_duplicated_block() {
        let tol = Tolerances::default();
        let r = check_minpoly_variant(&ComplexMatrix::identity(10).scale_real(0.4), ONE, &tol).unwrap();
        assert_eq!(r.degree, 1);
        assert!((r.report.ratio - 1.0).abs() < 1e-12);
        let a = a_family(4, 0.9).unwrap();
        let dup = ComplexMatrix::direct_sum(&[&a, &a]);
        let r = check_minpoly_variant(&dup, ONE, &tol).unwrap();
        assert_eq!(r.degree, 4);
        assert!(r.report.satisfied && r.weak_satisfied);
        assert_eq!(check_minpoly_variant(&a, ONE, &tol).unwrap().degree, 4);
    }

    #[test]
    fn power_profiles() {
        let u = ComplexMatrix::diagonal(&[c(0.0, 1.0), c(-1.0, 0.0), c(0.6, 0.8)]);
        let p = power_bound_profile(&u, 50).unwrap();
        assert!((p.c - 1.0).abs() < 1e-12);
        assert!(p.converged);
        let n3 = build(MatrixKind::N, 3, None).unwrap().scale_real(0.9);
        let p = power_bound_profile(&n3, 10).unwrap();
        assert!((p.c - 1.0).abs() < 1e-15 && p.converged);
        let j = ComplexMatrix::from_real_fn(3, |i, k| if i == k { 0.9 } else if k == i + 1 { 1.0 } else { 0.0 });
        assert!(power_bound_profile(&j, 400).unwrap().c > 1.0);
        let big = ComplexMatrix::identity(2).scale_real(1.1);
        assert!(!power_bound_profile(&big, 10).unwrap().converged);
    }

    #[test]
    fn power_bounded_scalar() {
        let tol = Tolerances::default();
        for a in [0.1, 0.5, 0.99] {
            let r = check_power_bounded_variant(&ComplexMatrix::identity(3).scale_real(a), &tol).unwrap();
            assert!(r.report.satisfied);
            assert!((r.report.resolvent_norm - 1.0 / (1.0 - a)).abs() < 1e-9 / (1.0 - a));
        }
    }

    #[test]
    fn entrywise_on_extremal_family() {
        let tol = Tolerances::default();
        let a = a_family(6, 0.99).unwrap();
        let r = entrywise_check(&a, &tol).unwrap();
        assert!(r.satisfied, "{r:?}");
        assert_eq!(r.max_lower, 0.0);
        assert!(matches!(entrywise_check(&a.transpose(), &tol), Err(Error::Input(_))));
    }

    #[test]
    fn positivity_on_triangular_contraction() {
        let tol = Tolerances::default();
        let a = a_family(5, 0.7).unwrap();
        let r = positivity_check(&a, &tol).unwrap();
        assert!(r.satisfied, "{r:?}");
    }

    #[test]
    fn cayley_on_accretive_matrix() {
        let tol = Tolerances::default();
        let a = ComplexMatrix::from_rows(&[vec![c(1.0, 0.5), c(0.3, 0.0)], vec![c(0.0, 0.0), c(0.5, -2.0)]]).unwrap();
        for s in [1e-3, 1e-4] {
            let r = cayley_check(&a, s, &tol).unwrap();
            assert!(r.satisfied, "{r:?}");
        }
    }
}
