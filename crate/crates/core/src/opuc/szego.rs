use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::poly::Polynomial;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Polynomial with leading coefficient exactly 1.
#[derive(Debug, Clone, PartialEq)]
pub struct MonicPolynomial {
    coeffs: Vec<Complex64>,
}

impl MonicPolynomial {
    /// Divides by the leading coefficient of the trimmed polynomial.
    pub fn from_polynomial(p: &Polynomial) -> Result<Self> {
        let p = p.trimmed();
        let lead = p.leading();
        if lead == ZERO {
            return Err(Error::domain("the zero polynomial has no monic form"));
        }
        let mut coeffs: Vec<Complex64> = p.coeffs.iter().map(|c| c / lead).collect();
        *coeffs.last_mut().expect("trimmed polynomial is non-empty") = ONE;
        Ok(MonicPolynomial { coeffs })
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn to_polynomial(&self) -> Polynomial {
        Polynomial::new(self.coeffs.clone())
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs.iter().rev().fold(ZERO, |acc, &c| acc * z + c)
    }
}

pub(crate) fn check_alphas(alphas: &[Complex64]) -> Result<()> {
    match alphas.iter().position(|a| !(a.norm() < 1.0)) {
        Some(j) => Err(Error::domain(format!("|alpha_{j}| = {} is not below 1", alphas[j].norm()))),
        None => Ok(()),
    }
}

/// `p^*(z) = z^n conj(p(1 / conj z))`.
pub fn star(p: &Polynomial, n: usize) -> Result<Polynomial> {
    if p.degree() > n {
        return Err(Error::input(format!("degree {} exceeds n = {n}", p.degree())));
    }
    Ok(p.reversed(n))
}

/// `(Phi_n, Phi_n^*)` from `Phi_{j+1} = z Phi_j - conj(alpha_j) Phi_j^*` and
/// `Phi_{j+1}^* = Phi_j^* - alpha_j z Phi_j`.
fn szego_pair(alphas: &[Complex64]) -> (Vec<Complex64>, Vec<Complex64>) {
    let n = alphas.len();
    let mut phi = vec![ZERO; n + 1];
    let mut phis = vec![ZERO; n + 1];
    phi[0] = ONE;
    phis[0] = ONE;
    for (j, &a) in alphas.iter().enumerate() {
        // z Phi_j occupies degrees 1..=j+1
        let mut next = vec![ZERO; j + 2];
        let mut next_s = vec![ZERO; j + 2];
        for k in 0..=j {
            next[k + 1] += phi[k];
            next[k] -= a.conj() * phis[k];
            next_s[k] += phis[k];
            next_s[k + 1] -= a * phi[k];
        }
        phi[..j + 2].copy_from_slice(&next);
        phis[..j + 2].copy_from_slice(&next_s);
    }
    (phi, phis)
}

/// Monic orthogonal polynomial `Phi_n` of the Verblunsky coefficients.
pub fn szego(alphas: &[Complex64]) -> Result<MonicPolynomial> {
    check_alphas(alphas)?;
    let (mut phi, _) = szego_pair(alphas);
    *phi.last_mut().expect("non-empty") = ONE;
    Ok(MonicPolynomial { coeffs: phi })
}

/// `(Phi_n(z), Phi_n'(z))` through the recursion, never forming
/// coefficients. Any final parameter (also unimodular) is allowed.
pub fn szego_eval(alphas: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let (mut p, mut dp, mut s, mut ds) = (ONE, ZERO, ONE, ZERO);
    for &a in alphas {
        let zp = z * p;
        let dzp = p + z * dp;
        let (np, nds) = (zp - a.conj() * s, ds - a * dzp);
        dp = dzp - a.conj() * ds;
        s -= a * zp;
        ds = nds;
        p = np;
    }
    (p, dp)
}

/// `Phi_m - conj(beta) Phi_m^*` for `Phi_m = szego(alphas)`, kept as
/// computed together with its monic form.
#[derive(Debug, Clone, PartialEq)]
pub struct Paraorthogonal {
    pub raw: Polynomial,
    /// `None` when the combination is a constant.
    pub monic: Option<MonicPolynomial>,
    /// Degree zero: no alphas, so the combination is the constant `1 - conj(beta)`.
    pub degenerate: bool,
}

pub fn popuc(alphas: &[Complex64], beta: Complex64) -> Result<Paraorthogonal> {
    check_alphas(alphas)?;
    if (beta.norm() - 1.0).abs() > 1e-12 {
        return Err(Error::domain(format!("|beta| = {} is not 1", beta.norm())));
    }
    let m = alphas.len();
    let (phi, phis) = szego_pair(alphas);
    let raw = Polynomial::new(phi.iter().zip(&phis).map(|(p, s)| p - beta.conj() * s).collect());
    let degenerate = m == 0;
    let monic = if degenerate { None } else { Some(MonicPolynomial::from_polynomial(&raw)?) };
    Ok(Paraorthogonal { raw, monic, degenerate })
}

/// `beta'` with `Phi_m - conj(beta) Phi_m^*` proportional to
/// `z Phi_{m-1} - conj(beta') Phi_{m-1}^*`.
pub fn popuc_final_parameter(alphas: &[Complex64], beta: Complex64) -> Option<Complex64> {
    let a = *alphas.last()?;
    Some((a + beta) / (ONE + beta * a.conj()))
}
