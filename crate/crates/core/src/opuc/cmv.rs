use num_complex::Complex64;

use super::szego::check_alphas;
use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;

/// `Theta_j = [[conj a, rho], [rho, -a]]` with `rho = sqrt(1 - |a|^2)`,
/// acting on coordinates `j, j + 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThetaBlock {
    pub index: usize,
    pub alpha: Complex64,
    pub rho: f64,
}

impl ThetaBlock {
    fn new(index: usize, alpha: Complex64) -> Self {
        ThetaBlock { index, alpha, rho: (1.0 - alpha.norm_sqr()).max(0.0).sqrt() }
    }

    fn entries(&self) -> [[Complex64; 2]; 2] {
        let r = Complex64::new(self.rho, 0.0);
        [[self.alpha.conj(), r], [r, -self.alpha]]
    }
}

/// Cutoff (`|tau| < 1`) or unitary (`|tau| = 1`) CMV matrix `L M`.
#[derive(Debug, Clone)]
pub struct CMVMatrix {
    pub matrix: ComplexMatrix,
    pub final_parameter: Complex64,
    pub blocks: Vec<ThetaBlock>,
}

impl CMVMatrix {
    pub fn n(&self) -> usize {
        self.matrix.n()
    }

    pub fn is_unitary_case(&self) -> bool {
        (self.final_parameter.norm() - 1.0).abs() <= 1e-12
    }

    pub fn alphas(&self) -> Vec<Complex64> {
        self.blocks.iter().map(|b| b.alpha).collect()
    }
}

fn check_tau(tau: Complex64) -> Result<()> {
    if tau.norm() > 1.0 + 1e-12 || !tau.norm().is_finite() {
        return Err(Error::domain(format!("|tau| = {} exceeds 1", tau.norm())));
    }
    Ok(())
}

/// `L = Theta_0 + Theta_2 + ...`, `M = 1 + Theta_1 + Theta_3 + ...` as direct
/// sums, with the `1 x 1` block `conj(tau)` closing whichever factor reaches
/// the last coordinate.
pub fn cmv(alphas: &[Complex64], tau: Complex64) -> Result<CMVMatrix> {
    check_alphas(alphas)?;
    check_tau(tau)?;
    let n = alphas.len() + 1;
    let blocks: Vec<ThetaBlock> = alphas.iter().enumerate().map(|(j, &a)| ThetaBlock::new(j, a)).collect();
    let mut l = ComplexMatrix::identity(n);
    let mut m = ComplexMatrix::identity(n);
    for b in &blocks {
        let target = if b.index % 2 == 0 { &mut l } else { &mut m };
        let e = b.entries();
        for (r, row) in e.iter().enumerate() {
            for (c, v) in row.iter().enumerate() {
                target[(b.index + r, b.index + c)] = *v;
            }
        }
    }
    if (n - 1).is_multiple_of(2) {
        l[(n - 1, n - 1)] = tau.conj();
    } else {
        m[(n - 1, n - 1)] = tau.conj();
    }
    Ok(CMVMatrix { matrix: l.matmul(&m), final_parameter: tau, blocks })
}

/// Upper Hessenberg product `Theta_0 Theta_1 ... Theta_{n-2} diag(1, .., 1, conj tau)`.
///
/// Same factors as the CMV matrix in a different order; the two are similar,
/// so this is a Hessenberg matrix with the CMV characteristic polynomial,
/// built in `O(n^2)`.
pub fn ggt_hessenberg(alphas: &[Complex64], tau: Complex64) -> Result<ComplexMatrix> {
    check_alphas(alphas)?;
    check_tau(tau)?;
    let n = alphas.len() + 1;
    let mut g = ComplexMatrix::identity(n);
    g[(n - 1, n - 1)] = tau.conj();
    for (j, &a) in alphas.iter().enumerate().rev() {
        let e = ThetaBlock::new(j, a).entries();
        // rows j, j+1 of the partial product are nonzero from column j on
        for c in j..n {
            let (x, y) = (g[(j, c)], g[(j + 1, c)]);
            g[(j, c)] = e[0][0] * x + e[0][1] * y;
            g[(j + 1, c)] = e[1][0] * x + e[1][1] * y;
        }
    }
    Ok(g)
}

/// `max` over the given unit vectors of
/// `||(C - C') phi|| - (|phi_{n-2}| + |phi_{n-1}|)` for two CMV matrices that
/// share all `Theta` blocks.
pub fn rank_one_excess(c: &CMVMatrix, other: &CMVMatrix, vectors: &[Vec<Complex64>]) -> Result<f64> {
    if c.n() != other.n() || c.n() < 2 {
        return Err(Error::input("CMV matrices must have the same size n >= 2"));
    }
    let diff = &c.matrix - &other.matrix;
    let n = c.n();
    Ok(vectors
        .iter()
        .map(|phi| {
            let d = diff.mul_vec(phi);
            d.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt() - (phi[n - 2].norm() + phi[n - 1].norm())
        })
        .fold(f64::NEG_INFINITY, f64::max))
}

/// `||(C - C') phi|| / (|phi_{n-2}| + |phi_{n-1}|)`, the constant the
/// rank-one proximity actually needs; it is at most `|tau - tau'|`.
pub fn rank_one_constant(c: &CMVMatrix, other: &CMVMatrix, phi: &[Complex64]) -> f64 {
    let n = c.n();
    let d = (&c.matrix - &other.matrix).mul_vec(phi);
    let lhs = d.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    lhs / (phi[n - 2].norm() + phi[n - 1].norm()).max(f64::MIN_POSITIVE)
}
