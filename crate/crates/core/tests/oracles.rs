use std::f64::consts::PI;

use resbound::bounds::{check_half_plane_variant, check_minpoly_variant};
use resbound::extremal::{build, c_of_n, closed_form_norm, d_eigenpairs, mtilde_eigenpairs, volterra_gram, MatrixKind, NormKind};
use resbound::linalg::{eigenvalues, inverse, minimal_polynomial_degree, operator_norm, resolvent_norm};
use resbound::opuc::{cmv, szego, szego_eval, zeros_of_cmv};
use resbound::stats::poisson_pmf;
use resbound::toeplitz::{a_family, f_a_prefix, norm_certificate, uttm, TaylorPrefix};
use resbound::{Complex64, ComplexMatrix, Tolerances};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn close(a: f64, b: f64, tol: f64) {
    assert!((a - b).abs() <= tol * b.abs().max(1.0), "{a} vs {b}");
}

#[test]
fn sharp_constant_small_n() {
    close(c_of_n(1), 1.0, 1e-14);
    close(c_of_n(2), 1.0 + 2f64.sqrt(), 1e-14);
    close(c_of_n(3), 2.0 + 3f64.sqrt(), 1e-14);
    close(closed_form_norm(NormKind::M, 4), 5.027_339_492, 1e-9);
}

#[test]
fn q_norm_small_n() {
    close(closed_form_norm(NormKind::Q1, 1), 1.0, 1e-14);
    close(closed_form_norm(NormKind::Q1, 2), (1.0 + 5f64.sqrt()) / 2.0, 1e-14);
    let q2 = build(MatrixKind::Q, 2, None).unwrap();
    close(operator_norm(&q2).unwrap(), (1.0 + 5f64.sqrt()) / 2.0, 1e-12);
}

#[test]
fn two_by_two_builds() {
    let m2 = build(MatrixKind::M, 2, None).unwrap();
    assert_eq!(m2, ComplexMatrix::from_real_rows(&[vec![1.0, 2.0], vec![0.0, 1.0]]).unwrap());
    close(operator_norm(&m2).unwrap(), 2.414_213_56, 1e-8);
    let d2 = build(MatrixKind::D, 2, None).unwrap();
    assert_eq!(d2, ComplexMatrix::from_real_rows(&[vec![2.0, -1.0], vec![-1.0, 1.0]]).unwrap());
    let mt = build(MatrixKind::Mtilde, 2, None).unwrap();
    assert_eq!(mt, ComplexMatrix::from_real_rows(&[vec![2.0, 1.0], vec![1.0, 0.0]]).unwrap());
}

#[test]
fn eigenpair_values_at_two() {
    let top = mtilde_eigenpairs(2).pairs.iter().map(|p| p.0).fold(f64::NEG_INFINITY, f64::max);
    close(top, 1.0 + 2f64.sqrt(), 1e-12);
    let low = d_eigenpairs(2).pairs.iter().map(|p| p.0).fold(f64::INFINITY, f64::min);
    close(low, 4.0 * (PI / 10.0).sin().powi(2), 1e-12);
    close(low.powf(-0.5), (1.0 + 5f64.sqrt()) / 2.0, 1e-12);
}

#[test]
fn volterra_gram_is_half_m() {
    let g = volterra_gram(2);
    let half_m = build(MatrixKind::M, 2, None).unwrap().scale_real(0.5);
    assert!((&g - &half_m).max_abs() < 1e-15);
    let n = 200;
    let ratio = 2.0 * operator_norm(&volterra_gram(n)).unwrap();
    close(ratio / n as f64, 4.0 / PI, 0.01);
}

#[test]
fn upper_triangular_spectrum_is_its_diagonal() {
    let a = ComplexMatrix::from_rows(&[
        vec![c(0.3, 0.1), c(1.0, 0.0), c(-2.0, 0.5)],
        vec![c(0.0, 0.0), c(-0.7, 0.0), c(0.4, 0.0)],
        vec![c(0.0, 0.0), c(0.0, 0.0), c(0.1, -0.6)],
    ])
    .unwrap();
    let spec = eigenvalues(&a).unwrap();
    for d in a.diag() {
        assert!(spec.distance_to(d) < 1e-12);
    }
}

#[test]
fn jordan_family_spectrum_and_minpoly() {
    let a = a_family(6, 0.5).unwrap();
    for l in eigenvalues(&a).unwrap().eigenvalues {
        assert!((l - 0.5).norm() < 0.05, "{l}");
    }
    assert_eq!(uttm(&f_a_prefix(6, 0.5).unwrap()), a);
    assert_eq!(minimal_polynomial_degree(&a, 1e-10).unwrap().degree, 6);
}

#[test]
fn normal_resolvent_is_inverse_distance() {
    let b = ComplexMatrix::diagonal(&[c(0.5, 0.0), c(0.0, 0.5), c(-0.3, -0.3)]);
    let z = c(0.9, 0.2);
    let dist = [c(0.5, 0.0), c(0.0, 0.5), c(-0.3, -0.3)].iter().map(|l| (l - z).norm()).fold(f64::INFINITY, f64::min);
    close(resolvent_norm(&b, z).unwrap(), 1.0 / dist, 1e-12);
}

#[test]
fn shift_resolvent_blows_up() {
    let n = 10;
    let one_minus_2n = &ComplexMatrix::identity(n) - &build(MatrixKind::N, n, None).unwrap().scale_real(2.0);
    assert!(operator_norm(&inverse(&one_minus_2n).unwrap()).unwrap() >= 2f64.powi(n as i32 - 1));
}

#[test]
fn resolvent_outside_the_norm_disk() {
    let m = build(MatrixKind::M, 4, None).unwrap();
    let norm = operator_norm(&m).unwrap();
    let z = c(norm + 0.5, 0.3);
    assert!(resolvent_norm(&m, z).unwrap() <= 1.0 / (z.norm() - norm) + 1e-12);
}

#[test]
fn m3_from_its_taylor_prefix() {
    let p = TaylorPrefix::from_real(&[1.0, 2.0, 2.0]).unwrap();
    assert_eq!(uttm(&p), build(MatrixKind::M, 3, None).unwrap());
}

#[test]
fn m_norms_are_certified() {
    for n in 2..=8 {
        let cert = norm_certificate(&build(MatrixKind::M, n, None).unwrap()).unwrap();
        assert!(cert.certified, "n = {n}");
        close(cert.norm, c_of_n(n), 1e-12);
    }
}

#[test]
fn half_plane_at_zero() {
    let a = ComplexMatrix::from_rows(&[vec![c(1.0, 0.0), c(1.0, 0.0)], vec![c(0.0, 0.0), c(0.5, 1.0)]]).unwrap();
    let r = check_half_plane_variant(&a, &Tolerances::default()).unwrap();
    assert!(r.satisfied);
    assert!(r.ratio <= c_of_n(2) + 1e-12);
}

#[test]
fn minpoly_degree_constant_is_used() {
    let a = a_family(4, 0.9).unwrap();
    let block = ComplexMatrix::direct_sum(&[&a, &a]);
    let r = check_minpoly_variant(&block, c(1.0, 0.0), &Tolerances::default()).unwrap();
    assert_eq!(r.degree, 4);
    assert!(r.report.satisfied);
}

#[test]
fn free_polynomial_is_a_monomial() {
    let phi = szego(&[c(0.0, 0.0); 5]).unwrap();
    let mut expected = [c(0.0, 0.0); 6];
    expected[5] = c(1.0, 0.0);
    assert_eq!(phi.coeffs(), &expected[..]);
}

#[test]
fn paraorthogonal_zeros_on_circle() {
    let tol = Tolerances::default();
    let alphas: Vec<Complex64> = (0..19).map(|j| Complex64::from_polar(0.5 * ((j % 5) as f64 / 5.0), j as f64)).collect();
    let beta = Complex64::from_polar(1.0, 0.7);
    let z = zeros_of_cmv(&cmv(&alphas, beta).unwrap(), &tol).unwrap();
    assert_eq!(z.len(), 20);
    for w in &z.zeros {
        assert!((w.norm() - 1.0).abs() < 1e-9);
        let mut params = alphas.clone();
        params.push(beta);
        assert!(szego_eval(&params, *w).0.norm() < 1e-8);
    }
}

#[test]
fn poisson_empty_arc_probability() {
    close(poisson_pmf(1.0, 0), 0.367_879_441, 1e-9);
}
