//! Seeded substreams and the random objects drawn from them.
//!
//! Every trial owns a ChaCha8 stream keyed by `(seed, domain, index)`, so a
//! batch gives the same results whatever the thread count.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::linalg::ComplexMatrix;

/// Independent purposes that draw from the same master seed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Domain {
    Contraction = 1,
    Spectral = 2,
    Verblunsky = 3,
    Vectors = 4,
    Search = 5,
}

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

pub fn substream(seed: u64, domain: Domain, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add((domain as u64).wrapping_mul(GOLDEN)));
    rng.set_stream(index);
    rng
}

/// Standard complex Gaussian, `E|w|^2 = 1`.
pub fn complex_normal<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

pub fn ginibre<R: Rng + ?Sized>(n: usize, rng: &mut R) -> ComplexMatrix {
    ComplexMatrix::from_fn(n, |_, _| complex_normal(rng))
}

/// Uniform point on the circle of radius `r`.
pub fn on_circle<R: Rng + ?Sized>(r: f64, rng: &mut R) -> Complex64 {
    Complex64::from_polar(r, TAU * rng.random::<f64>())
}

/// How the modulus of a point in the disk is drawn.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DiskSampling {
    /// Uniform with respect to area.
    #[default]
    Area,
    /// Modulus uniform on `[0, r)`.
    Radius,
}

/// Point of the open disk of radius `r`.
pub fn in_disk<R: Rng + ?Sized>(r: f64, mode: DiskSampling, rng: &mut R) -> Complex64 {
    let u: f64 = rng.random();
    let rho = match mode {
        DiskSampling::Area => r * u.sqrt(),
        DiskSampling::Radius => r * u,
    };
    Complex64::from_polar(rho, TAU * rng.random::<f64>())
}

/// Uniform unit vector in `C^n`.
pub fn unit_vector<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vec<Complex64> {
    loop {
        let v: Vec<Complex64> = (0..n).map(|_| complex_normal(rng)).collect();
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-300 {
            return v.into_iter().map(|z| z / norm).collect();
        }
    }
}

/// Haar-distributed unitary: Gram-Schmidt on a Ginibre matrix, which fixes
/// the phases of the implicit `R` to be positive.
pub fn haar_unitary<R: Rng + ?Sized>(n: usize, rng: &mut R) -> ComplexMatrix {
    let g = ginibre(n, rng);
    let mut cols: Vec<Vec<Complex64>> = Vec::with_capacity(n);
    for j in 0..n {
        let mut v = g.column(j);
        // two passes keep the columns orthogonal to working precision
        for _ in 0..2 {
            for q in &cols {
                let c: Complex64 = q.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
                for (vi, qi) in v.iter_mut().zip(q) {
                    *vi -= c * qi;
                }
            }
        }
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        cols.push(v.into_iter().map(|z| z / norm).collect());
    }
    ComplexMatrix::from_fn(n, |i, j| cols[j][i])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn substreams_are_reproducible_and_distinct() {
        let a: u64 = substream(7, Domain::Contraction, 3).random();
        let b: u64 = substream(7, Domain::Contraction, 3).random();
        let c: u64 = substream(7, Domain::Contraction, 4).random();
        let d: u64 = substream(7, Domain::Spectral, 3).random();
        assert_eq!(a, b);
        assert_ne!(a, c);
        assert_ne!(a, d);
    }

    #[test]
    fn haar_unitary_is_unitary() {
        let mut rng = substream(1, Domain::Contraction, 0);
        for n in [1, 2, 5, 12] {
            assert!(haar_unitary(n, &mut rng).unitarity_defect() < 1e-13 * n as f64);
        }
    }

    #[test]
    fn disk_modes_differ_in_mean_modulus() {
        let mut rng = substream(2, Domain::Verblunsky, 0);
        let m = 20_000;
        let area: f64 = (0..m).map(|_| in_disk(1.0, DiskSampling::Area, &mut rng).norm()).sum::<f64>() / m as f64;
        let radius: f64 = (0..m).map(|_| in_disk(1.0, DiskSampling::Radius, &mut rng).norm()).sum::<f64>() / m as f64;
        assert!((area - 2.0 / 3.0).abs() < 0.01);
        assert!((radius - 0.5).abs() < 0.01);
    }
}
