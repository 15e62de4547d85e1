use num_complex::Complex64;

use super::cmv::{ggt_hessenberg, CMVMatrix};
use super::szego::{szego_eval, MonicPolynomial};
use crate::error::{Error, Result};
use crate::linalg::{hessenberg_eigenvalues, schur_triangularize_with};
use crate::tolerances::Tolerances;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZeroSource {
    CmvEigen,
    Companion,
    RefinedNewton,
}

impl ZeroSource {
    pub fn as_str(self) -> &'static str {
        match self {
            ZeroSource::CmvEigen => "cmv-eigen",
            ZeroSource::Companion => "companion",
            ZeroSource::RefinedNewton => "refined-newton",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ZeroSet {
    pub zeros: Vec<Complex64>,
    pub source: ZeroSource,
}

impl ZeroSet {
    pub const CSV_HEADER: &'static str = "trial,j,re,im,modulus,arg";

    /// One CSV row per zero, 12 significant digits.
    pub fn csv_rows(&self, trial: usize) -> Vec<String> {
        self.zeros
            .iter()
            .enumerate()
            .map(|(j, z)| format!("{trial},{j},{:.11e},{:.11e},{:.11e},{:.11e}", z.re, z.im, z.norm(), z.arg()))
            .collect()
    }

    pub fn len(&self) -> usize {
        self.zeros.len()
    }

    pub fn is_empty(&self) -> bool {
        self.zeros.is_empty()
    }
}

/// Replaces groups of zeros within `radius` of each other by their centroid
/// and reports which entries belong to a group of size > 1.
fn cluster(zeros: &mut [Complex64], radius: f64) -> Vec<bool> {
    let n = zeros.len();
    let mut group: Vec<usize> = (0..n).collect();
    fn find(g: &mut [usize], i: usize) -> usize {
        let mut r = i;
        while g[r] != r {
            r = g[r];
        }
        g[i] = r;
        r
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| zeros[a].re.total_cmp(&zeros[b].re));
    for (k, &i) in order.iter().enumerate() {
        for &j in &order[k + 1..] {
            if zeros[j].re - zeros[i].re > radius {
                break;
            }
            if (zeros[i] - zeros[j]).norm() <= radius {
                let (a, b) = (find(&mut group, i), find(&mut group, j));
                group[a.max(b)] = a.min(b);
            }
        }
    }
    let roots: Vec<usize> = (0..n).map(|i| find(&mut group, i)).collect();
    let mut clustered = vec![false; n];
    for r in 0..n {
        let members: Vec<usize> = (0..n).filter(|&i| roots[i] == r).collect();
        if members.len() > 1 {
            let c = members.iter().map(|&i| zeros[i]).sum::<Complex64>() / members.len() as f64;
            for &i in &members {
                zeros[i] = c;
                clustered[i] = true;
            }
        }
    }
    clustered
}

/// Up to `steps` Newton steps, each kept only if it lowers `|p|`.
fn refine(zeros: &mut [Complex64], steps: usize, radius: f64, eval: impl Fn(Complex64) -> (Complex64, Complex64)) -> bool {
    let clustered = cluster(zeros, radius);
    let mut moved = false;
    for (z, skip) in zeros.iter_mut().zip(clustered) {
        if skip {
            continue;
        }
        let (mut p, mut dp) = eval(*z);
        for _ in 0..steps {
            if p.norm() == 0.0 || dp.norm() == 0.0 {
                break;
            }
            let candidate = *z - p / dp;
            let (q, dq) = eval(candidate);
            if !(q.norm() < p.norm()) {
                break;
            }
            *z = candidate;
            p = q;
            dp = dq;
            moved = true;
        }
    }
    moved
}

/// Zeros of `Phi_n` for the parameters `alphas, tau` (`|tau| <= 1`), i.e.
/// the eigenvalues of `cmv(alphas, tau)`, polished by Newton steps through
/// the recursion.
pub fn zeros_of_parameters(alphas: &[Complex64], tau: Complex64, tol: &Tolerances) -> Result<ZeroSet> {
    let g = ggt_hessenberg(alphas, tau)?;
    let mut zeros = hessenberg_eigenvalues(g, 1.0, tol)?.eigenvalues;
    let mut chain = alphas.to_vec();
    chain.push(tau);
    let moved = refine(&mut zeros, tol.newton_steps, tol.cluster_radius, |z| szego_eval(&chain, z));
    Ok(ZeroSet { zeros, source: if moved { ZeroSource::RefinedNewton } else { ZeroSource::CmvEigen } })
}

pub fn zeros_of_cmv(c: &CMVMatrix, tol: &Tolerances) -> Result<ZeroSet> {
    zeros_of_parameters(&c.alphas(), c.final_parameter, tol)
}

/// Companion-matrix route for polynomials without a CMV realization.
pub fn zeros_of_polynomial(p: &MonicPolynomial, tol: &Tolerances) -> Result<ZeroSet> {
    if p.degree() == 0 {
        return Ok(ZeroSet { zeros: Vec::new(), source: ZeroSource::Companion });
    }
    let poly = p.to_polynomial();
    let c = poly.companion()?;
    let norm = c.norm_bound();
    let mut zeros = hessenberg_eigenvalues(c, norm, tol)?.eigenvalues;
    let moved = refine(&mut zeros, tol.newton_steps, tol.cluster_radius, |z| poly.eval_with_derivative(z));
    Ok(ZeroSet { zeros, source: if moved { ZeroSource::RefinedNewton } else { ZeroSource::Companion } })
}

#[derive(Debug, Clone, PartialEq)]
pub struct EigenvectorProfile {
    pub eigenvalue: Complex64,
    /// First index of the largest amplitude.
    pub m_phi: usize,
    /// `|phi_k|` of the unit eigenvector.
    pub amplitudes: Vec<f64>,
    /// Another eigenvalue lies within `1e-12`; the vector is one choice
    /// from an orthonormal basis of the cluster.
    pub degenerate: bool,
}

/// Eigenvector amplitudes of a unitary CMV matrix, from its Schur form
/// (diagonal for a normal matrix, so the Schur vectors are eigenvectors).
pub fn eigenvector_profiles(c: &CMVMatrix, tol: &Tolerances) -> Result<Vec<EigenvectorProfile>> {
    if !c.is_unitary_case() {
        return Err(Error::domain("eigenvector profiles need a unitary CMV matrix"));
    }
    let n = c.n();
    let schur = schur_triangularize_with(&c.matrix, tol)?;
    let eig = schur.t.diag();
    Ok((0..n)
        .map(|k| {
            let v = schur.q.column(k);
            let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            let amplitudes: Vec<f64> = v.iter().map(|z| z.norm() / norm).collect();
            let max = amplitudes.iter().copied().fold(0.0, f64::max);
            let m_phi = amplitudes.iter().position(|&a| a == max).unwrap_or(0);
            let degenerate = (0..n).any(|j| j != k && (eig[j] - eig[k]).norm() < 1e-12);
            EigenvectorProfile { eigenvalue: eig[k], m_phi, amplitudes, degenerate }
        })
        .collect())
}

pub fn eigenvector_profile(c: &CMVMatrix, which: usize, tol: &Tolerances) -> Result<EigenvectorProfile> {
    if which >= c.n() {
        return Err(Error::input(format!("eigen index {which} out of range for n = {}", c.n())));
    }
    Ok(eigenvector_profiles(c, tol)?.swap_remove(which))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::matched_distance;
    use crate::opuc::cmv::cmv;
    use crate::opuc::szego::{popuc, popuc_final_parameter, szego};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn monomial_has_zeros_at_origin() {
        let tol = Tolerances::default();
        let z = zeros_of_parameters(&[Complex64::default(); 4], Complex64::default(), &tol).unwrap();
        assert_eq!(z.len(), 5);
        assert!(z.zeros.iter().all(|w| w.norm() < 1e-12));
        let p = szego(&[Complex64::default(); 4]).unwrap();
        let z = zeros_of_polynomial(&p, &tol).unwrap();
        assert!(z.zeros.iter().all(|w| w.norm() < 1e-12));
    }

    #[test]
    fn rotated_roots_of_unity() {
        let tol = Tolerances::default();
        let beta = Complex64::from_polar(1.0, 0.9);
        let m = 6;
        let p = popuc(&vec![Complex64::default(); m], beta).unwrap().monic.unwrap();
        let zs = zeros_of_polynomial(&p, &tol).unwrap();
        let expected: Vec<Complex64> = (0..m)
            .map(|k| Complex64::from_polar(1.0, (-0.9 + std::f64::consts::TAU * k as f64) / m as f64))
            .collect();
        assert!(matched_distance(&zs.zeros, &expected) < 1e-12);
        let mut sorted: Vec<f64> = zs.zeros.iter().map(|z| z.arg()).collect();
        sorted.sort_by(f64::total_cmp);
        let gap = (sorted[1] - sorted[0]).abs();
        assert!((2.0 * (gap / 2.0).sin() - 2.0 * (std::f64::consts::PI / m as f64).sin()).abs() < 1e-12);
    }

    #[test]
    fn unitary_zeros_are_unimodular_and_match_companion() {
        let tol = Tolerances::default();
        let alphas: Vec<Complex64> = (0..11).map(|j| Complex64::from_polar(0.5, 0.77 * j as f64)).collect();
        let beta = c(0.0, 1.0);
        let z = zeros_of_parameters(&alphas, beta, &tol).unwrap();
        assert!(z.zeros.iter().all(|w| (w.norm() - 1.0).abs() < 1e-12));
        // the literal paraorthogonal combination has the zeros of a shorter unitary CMV matrix
        let p = popuc(&alphas, beta).unwrap().monic.unwrap();
        let companion = zeros_of_polynomial(&p, &tol).unwrap();
        let b2 = popuc_final_parameter(&alphas, beta).unwrap();
        let via_cmv = zeros_of_parameters(&alphas[..10], b2, &tol).unwrap();
        assert!(matched_distance(&companion.zeros, &via_cmv.zeros) < 1e-10);
    }

    #[test]
    fn clustering_merges_repeated_zeros() {
        let mut z = vec![c(0.5, 0.0), c(0.5 + 1e-9, 0.0), c(-0.3, 0.2)];
        let flags = cluster(&mut z, 1e-7);
        assert_eq!(flags, vec![true, true, false]);
        assert_eq!(z[0], z[1]);
    }

    #[test]
    fn profiles_are_unit_vectors() {
        let tol = Tolerances::default();
        let alphas: Vec<Complex64> = (0..9).map(|j| Complex64::from_polar(0.5, 1.1 * j as f64)).collect();
        let m = cmv(&alphas, c(1.0, 0.0)).unwrap();
        let profiles = eigenvector_profiles(&m, &tol).unwrap();
        assert_eq!(profiles.len(), 10);
        for p in &profiles {
            let s: f64 = p.amplitudes.iter().map(|a| a * a).sum();
            assert!((s - 1.0).abs() < 1e-12);
            assert!(p.m_phi < 10);
        }
        assert!(eigenvector_profiles(&cmv(&alphas, c(0.5, 0.0)).unwrap(), &tol).is_err());
    }
}
