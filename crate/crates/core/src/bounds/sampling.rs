use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::Rng;

use crate::error::{Error, Result};
use crate::linalg::{operator_norm, ComplexMatrix};
use crate::rng::{ginibre, haar_unitary, in_disk, on_circle, substream, DiskSampling, Domain};
use crate::toeplitz::uttm_from_schur_parameters;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Construction {
    /// Gaussian matrix divided by its norm; norm exactly 1.
    GinibreScaled,
    /// `U diag(s) V^*` with Haar `U, V` and `s_j` uniform on `[0, 1)`.
    SvdReassigned,
    /// Toeplitz matrix of a Schur function with random parameters.
    UttmRandom,
}

impl Construction {
    pub const ALL: [Construction; 3] = [Construction::GinibreScaled, Construction::SvdReassigned, Construction::UttmRandom];

    pub fn as_str(self) -> &'static str {
        match self {
            Construction::GinibreScaled => "ginibre-scaled",
            Construction::SvdReassigned => "svd-reassigned",
            Construction::UttmRandom => "uttm-random",
        }
    }
}

impl fmt::Display for Construction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Construction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Construction::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| Error::input(format!("unknown construction '{s}'")))
    }
}

#[derive(Debug, Clone)]
pub struct ContractionSample {
    pub matrix: ComplexMatrix,
    pub norm: f64,
    pub seed: u64,
    pub construction: Construction,
}

pub fn random_contraction(n: usize, seed: u64, construction: Construction) -> Result<ContractionSample> {
    if n == 0 {
        return Err(Error::input("n must be at least 1"));
    }
    let mut rng = substream(seed, Domain::Contraction, construction as u64);
    let matrix = match construction {
        Construction::GinibreScaled => {
            let g = ginibre(n, &mut rng);
            let norm = operator_norm(&g)?;
            g.scale_real(1.0 / norm)
        }
        Construction::SvdReassigned => {
            let u = haar_unitary(n, &mut rng);
            let v = haar_unitary(n, &mut rng);
            let s: Vec<Complex64> = (0..n).map(|_| Complex64::new(rng.random::<f64>(), 0.0)).collect();
            u.matmul(&ComplexMatrix::diagonal(&s)).matmul(&v.adjoint())
        }
        Construction::UttmRandom => {
            let gammas: Vec<Complex64> = (0..n).map(|_| in_disk(1.0, DiskSampling::Area, &mut rng)).collect();
            uttm_from_schur_parameters(&gammas, n)?
        }
    };
    let norm = operator_norm(&matrix)?;
    Ok(ContractionSample { matrix, norm, seed, construction })
}

/// Seed of trial `index` under a master seed (splitmix64 finalizer).
pub fn trial_seed(master: u64, index: u64) -> u64 {
    let mut x = master ^ index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    x = (x ^ (x >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    x ^ (x >> 31)
}

/// Test points for the resolvent bound: `count` uniform points on the
/// circle of radius `max(||A||, rho + gap)` and one ray at radii
/// `||A||, 1.01 ||A||, 2 ||A||`.
pub fn theorem1_z_points(norm: f64, spectral_radius: f64, count: usize, seed: u64) -> Vec<Complex64> {
    const GAP: f64 = 1e-6;
    let mut rng = substream(seed, Domain::Spectral, 0);
    let r = norm.max(spectral_radius + GAP);
    let mut zs: Vec<Complex64> = (0..count).map(|_| on_circle(r, &mut rng)).collect();
    let ray = on_circle(1.0, &mut rng);
    for s in [1.0, 1.01, 2.0] {
        let radius = (s * norm).max(spectral_radius + GAP);
        zs.push(ray * radius);
    }
    zs
}
