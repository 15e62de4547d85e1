//! Closed-form extremal matrices and their spectral data.
//!
//! `M_n` is the upper triangular Toeplitz matrix with symbol `(1+z)/(1-z)`
//! (ones on the diagonal, twos above). Its norm `cot(pi/4n)` is the sharp
//! constant in the resolvent bound for `n x n` contractions.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MatrixKind {
    /// Ones on the diagonal, twos above.
    M,
    /// `a` on the diagonal, ones above.
    Q,
    /// Nilpotent shift, ones on the superdiagonal.
    N,
    /// Hankel flip of `M`: twos above the antidiagonal, ones on it.
    Mtilde,
    /// Antidiagonal permutation.
    W,
    /// `(1 - N)(1 - N)^*`, the Dirichlet/Neumann path Laplacian.
    D,
}

impl FromStr for MatrixKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "M" => Ok(MatrixKind::M),
            "Q" => Ok(MatrixKind::Q),
            "N" => Ok(MatrixKind::N),
            "Mtilde" => Ok(MatrixKind::Mtilde),
            "W" => Ok(MatrixKind::W),
            "D" => Ok(MatrixKind::D),
            other => Err(Error::input(format!("unknown matrix kind '{other}'"))),
        }
    }
}

impl fmt::Display for MatrixKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            MatrixKind::M => "M",
            MatrixKind::Q => "Q",
            MatrixKind::N => "N",
            MatrixKind::Mtilde => "Mtilde",
            MatrixKind::W => "W",
            MatrixKind::D => "D",
        };
        f.write_str(s)
    }
}

/// Builds one of the named matrices. `a` is the diagonal of `Q` (default 1)
/// and is ignored for the other kinds.
pub fn build(kind: MatrixKind, n: usize, a: Option<Complex64>) -> Result<ComplexMatrix> {
    if n == 0 {
        return Err(Error::input("n must be at least 1"));
    }
    let last = n - 1;
    let m = match kind {
        MatrixKind::M => ComplexMatrix::from_real_fn(n, |j, k| match k.cmp(&j) {
            std::cmp::Ordering::Greater => 2.0,
            std::cmp::Ordering::Equal => 1.0,
            std::cmp::Ordering::Less => 0.0,
        }),
        MatrixKind::Q => {
            let a = a.unwrap_or(Complex64::new(1.0, 0.0));
            ComplexMatrix::from_fn(n, |j, k| match k.cmp(&j) {
                std::cmp::Ordering::Greater => Complex64::new(1.0, 0.0),
                std::cmp::Ordering::Equal => a,
                std::cmp::Ordering::Less => Complex64::new(0.0, 0.0),
            })
        }
        MatrixKind::N => ComplexMatrix::from_real_fn(n, |j, k| if k == j + 1 { 1.0 } else { 0.0 }),
        MatrixKind::Mtilde => ComplexMatrix::from_real_fn(n, |j, k| match (j + k).cmp(&last) {
            std::cmp::Ordering::Less => 2.0,
            std::cmp::Ordering::Equal => 1.0,
            std::cmp::Ordering::Greater => 0.0,
        }),
        MatrixKind::W => ComplexMatrix::from_real_fn(n, |j, k| if j + k == last { 1.0 } else { 0.0 }),
        MatrixKind::D => ComplexMatrix::from_real_fn(n, |j, k| {
            if j == k {
                if j == last { 1.0 } else { 2.0 }
            } else if j.abs_diff(k) == 1 {
                -1.0
            } else {
                0.0
            }
        }),
    };
    Ok(m)
}

/// `cot(pi / 4n)`.
pub fn c_of_n(n: usize) -> f64 {
    1.0 / (PI / (4.0 * n as f64)).tan()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NormKind {
    M,
    /// `Q_n(1)`.
    Q1,
}

pub fn closed_form_norm(kind: NormKind, n: usize) -> f64 {
    match kind {
        NormKind::M => c_of_n(n),
        NormKind::Q1 => 1.0 / (2.0 * (PI / (4.0 * n as f64 + 2.0)).sin()),
    }
}

/// Real eigenpairs of a real symmetric matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenpairTable {
    pub n: usize,
    pub pairs: Vec<(f64, Vec<f64>)>,
}

impl EigenpairTable {
    /// Largest `||A v - lambda v|| / (||A|| ||v||)` over the table, with
    /// `||A||` the largest eigenvalue modulus.
    pub fn residual(&self, a: &ComplexMatrix) -> f64 {
        let scale = self.pairs.iter().map(|p| p.0.abs()).fold(0.0, f64::max).max(f64::MIN_POSITIVE);
        self.pairs
            .iter()
            .map(|(lambda, v)| {
                let vc: Vec<Complex64> = v.iter().map(|&x| Complex64::new(x, 0.0)).collect();
                let av = a.mul_vec(&vc);
                let r: f64 = av.iter().zip(v).map(|(x, y)| (x - y * lambda).norm_sqr()).sum::<f64>().sqrt();
                let vn: f64 = v.iter().map(|x| x * x).sum::<f64>().sqrt();
                r / (scale * vn)
            })
            .fold(0.0, f64::max)
    }

    /// Largest `|<v_i, v_j>|` between distinct normalized eigenvectors.
    pub fn orthogonality_defect(&self) -> f64 {
        let unit: Vec<Vec<f64>> = self
            .pairs
            .iter()
            .map(|(_, v)| {
                let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
                v.iter().map(|x| x / norm).collect()
            })
            .collect();
        let mut worst: f64 = 0.0;
        for i in 0..unit.len() {
            for j in i + 1..unit.len() {
                let d: f64 = unit[i].iter().zip(&unit[j]).map(|(a, b)| a * b).sum();
                worst = worst.max(d.abs());
            }
        }
        worst
    }
}

/// Eigenpairs of the Hankel flip of `M_n`: `cot((2l + 1/2) pi / 2n)` with
/// vectors `cos((2l + 1/2)(pi / 2n)(2j - 1))`, `j = 1..n`.
pub fn mtilde_eigenpairs(n: usize) -> EigenpairTable {
    let h = PI / (2.0 * n as f64);
    let pairs = (0..n)
        .map(|l| {
            let t = (2 * l) as f64 + 0.5;
            let v = (1..=n).map(|j| (t * h * (2 * j - 1) as f64).cos()).collect();
            (1.0 / (t * h).tan(), v)
        })
        .collect();
    EigenpairTable { n, pairs }
}

/// Eigenpairs of `D_n`: `4 sin^2(pi (2l+1) / (2(2n+1)))` with vectors
/// `sin(pi (2l+1) j / (2n+1))`, `j = 1..n`.
pub fn d_eigenpairs(n: usize) -> EigenpairTable {
    let m = (2 * n + 1) as f64;
    let pairs = (0..n)
        .map(|l| {
            let odd = (2 * l + 1) as f64;
            let v = (1..=n).map(|j| (PI * odd * j as f64 / m).sin()).collect();
            let s = (PI * odd / (2.0 * m)).sin();
            (4.0 * s * s, v)
        })
        .collect();
    EigenpairTable { n, pairs }
}

/// Area of `{(x, y) in [x0, x1] x [y0, y1] : x <= y}`.
fn area_below_diagonal(x0: f64, x1: f64, y0: f64, y1: f64) -> f64 {
    // Integrate over x the length of [max(x, y0), y1].
    let full = |x: f64| (y1 - x.max(y0)).max(0.0);
    // full(x) is piecewise linear with kinks at y0 and y1.
    let mut knots = vec![x0, x1];
    for k in [y0, y1] {
        if k > x0 && k < x1 {
            knots.push(k);
        }
    }
    knots.sort_by(f64::total_cmp);
    knots.windows(2).map(|w| 0.5 * (full(w[0]) + full(w[1])) * (w[1] - w[0])).sum()
}

/// `n <f_j, K f_k>` for the normalized indicator functions of
/// `[j/n, (j+1)/n)` and the kernel `K(x, y) = 1` for `x <= y`.
pub fn volterra_gram(n: usize) -> ComplexMatrix {
    // In the coordinates u = n x, v = n y the cells are unit squares and the
    // factor n * (sqrt n)^2 / n^2 from the basis and the Jacobian is 1.
    ComplexMatrix::from_real_fn(n, |j, k| {
        area_below_diagonal(j as f64, (j + 1) as f64, k as f64, (k + 1) as f64)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::operator_norm;

    fn real(m: &ComplexMatrix) -> Vec<Vec<f64>> {
        (0..m.n()).map(|i| m.row(i).iter().map(|z| z.re).collect()).collect()
    }

    #[test]
    fn small_constructions() {
        assert_eq!(real(&build(MatrixKind::M, 2, None).unwrap()), vec![vec![1.0, 2.0], vec![0.0, 1.0]]);
        assert_eq!(real(&build(MatrixKind::D, 2, None).unwrap()), vec![vec![2.0, -1.0], vec![-1.0, 1.0]]);
        assert_eq!(real(&build(MatrixKind::Mtilde, 2, None).unwrap()), vec![vec![2.0, 1.0], vec![1.0, 0.0]]);
        assert_eq!(real(&build(MatrixKind::W, 3, None).unwrap())[0], vec![0.0, 0.0, 1.0]);
        let q = build(MatrixKind::Q, 3, Some(Complex64::new(0.5, 0.0))).unwrap();
        assert_eq!(real(&q), vec![vec![0.5, 1.0, 1.0], vec![0.0, 0.5, 1.0], vec![0.0, 0.0, 0.5]]);
        assert!(build(MatrixKind::M, 0, None).is_err());
        assert!("X".parse::<MatrixKind>().is_err());
        assert_eq!("Mtilde".parse::<MatrixKind>().unwrap(), MatrixKind::Mtilde);
    }

    #[test]
    fn d_is_gram_of_one_minus_shift() {
        for n in 1..8 {
            let ident = ComplexMatrix::identity(n);
            let b = &ident - &build(MatrixKind::N, n, None).unwrap();
            assert_eq!(b.matmul(&b.adjoint()), build(MatrixKind::D, n, None).unwrap());
        }
    }

    #[test]
    fn constant_values() {
        assert!((c_of_n(1) - 1.0).abs() < 1e-15);
        assert!((c_of_n(2) - (1.0 + 2f64.sqrt())).abs() < 1e-14);
        assert!((c_of_n(3) - (2.0 + 3f64.sqrt())).abs() < 1e-14);
        assert!((closed_form_norm(NormKind::M, 4) - 5.027_339_492).abs() < 1e-8);
        assert!((closed_form_norm(NormKind::Q1, 1) - 1.0).abs() < 1e-15);
        assert!((closed_form_norm(NormKind::Q1, 2) - (1.0 + 5f64.sqrt()) / 2.0).abs() < 1e-14);
    }

    #[test]
    fn small_eigenpair_tables() {
        let t1 = mtilde_eigenpairs(1);
        assert!((t1.pairs[0].0 - 1.0).abs() < 1e-15);
        let t2 = mtilde_eigenpairs(2);
        assert!((t2.pairs[0].0 - (1.0 + 2f64.sqrt())).abs() < 1e-14);
        assert!((t2.pairs[1].0 - (1.0 - 2f64.sqrt())).abs() < 1e-14);
        let d1 = d_eigenpairs(1);
        assert!((d1.pairs[0].0 - 1.0).abs() < 1e-15);
        let d2 = d_eigenpairs(2);
        assert!((d2.pairs[0].0 - 0.381_966_011_250_105).abs() < 1e-14);
        assert!((d2.pairs[0].0.powf(-0.5) - (1.0 + 5f64.sqrt()) / 2.0).abs() < 1e-14);
    }

    #[test]
    fn volterra_gram_is_half_m() {
        assert_eq!(real(&volterra_gram(1)), vec![vec![0.5]]);
        assert_eq!(real(&volterra_gram(2)), vec![vec![0.5, 1.0], vec![0.0, 0.5]]);
        for n in 1..12 {
            assert_eq!(volterra_gram(n), build(MatrixKind::M, n, None).unwrap().scale_real(0.5));
        }
    }

    #[test]
    fn gram_norm_approaches_four_over_pi() {
        let n = 200;
        let scaled = 2.0 * operator_norm(&volterra_gram(n)).unwrap() / n as f64;
        assert!((scaled / (4.0 / PI) - 1.0).abs() < 0.01);
    }
}
