use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::cmv::{cmv, CMVMatrix};
use crate::error::{Error, Result};
use crate::rng::{in_disk, on_circle, substream, DiskSampling, Domain};

/// `alphas[0..n]` and `beta` of one draw of the rho-model.
///
/// The cutoff matrix of size `n` uses all `n` alphas (the last one as its
/// final parameter); the paraorthogonal partner of size `n` uses the first
/// `n - 1` and closes with `beta`.
#[derive(Debug, Clone, PartialEq)]
pub struct VerblunskySequence {
    pub n: usize,
    pub rho: f64,
    pub seed: u64,
    pub alphas: Vec<Complex64>,
    pub beta: Complex64,
}

#[derive(Serialize, Deserialize)]
struct Pair {
    re: f64,
    im: f64,
}

#[derive(Serialize, Deserialize)]
struct Record {
    n: usize,
    rho: f64,
    seed: u64,
    alphas: Vec<Pair>,
    beta: Pair,
}

impl VerblunskySequence {
    pub fn cutoff(&self) -> Result<CMVMatrix> {
        cmv(&self.alphas[..self.n - 1], self.alphas[self.n - 1])
    }

    pub fn paraorthogonal(&self) -> Result<CMVMatrix> {
        cmv(&self.alphas[..self.n - 1], self.beta)
    }

    pub fn to_json(&self) -> String {
        let pair = |z: &Complex64| Pair { re: z.re, im: z.im };
        let r = Record {
            n: self.n,
            rho: self.rho,
            seed: self.seed,
            alphas: self.alphas.iter().map(pair).collect(),
            beta: pair(&self.beta),
        };
        serde_json::to_string(&r).expect("plain numeric record")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let r: Record = serde_json::from_str(s).map_err(|e| Error::input(format!("bad sequence JSON: {e}")))?;
        let alphas: Vec<Complex64> = r.alphas.iter().map(|p| Complex64::new(p.re, p.im)).collect();
        let beta = Complex64::new(r.beta.re, r.beta.im);
        if alphas.len() != r.n || r.n == 0 {
            return Err(Error::input(format!("expected {} alphas, found {}", r.n, alphas.len())));
        }
        if alphas.iter().any(|a| !(a.norm() < 1.0)) {
            return Err(Error::domain("alpha outside the open disk"));
        }
        if (beta.norm() - 1.0).abs() > 1e-12 {
            return Err(Error::domain("beta is not unimodular"));
        }
        Ok(VerblunskySequence { n: r.n, rho: r.rho, seed: r.seed, alphas, beta })
    }
}

pub fn sample_rho_model(n: usize, rho: f64, seed: u64) -> Result<VerblunskySequence> {
    sample_rho_model_with(n, rho, seed, DiskSampling::Area)
}

pub fn sample_rho_model_with(n: usize, rho: f64, seed: u64, mode: DiskSampling) -> Result<VerblunskySequence> {
    if !(rho > 0.0 && rho < 1.0) {
        return Err(Error::domain(format!("rho = {rho} must lie in (0, 1)")));
    }
    if n == 0 {
        return Err(Error::input("n must be at least 1"));
    }
    let mut rng = substream(seed, Domain::Verblunsky, 0);
    let alphas = (0..n).map(|_| in_disk(rho, mode, &mut rng)).collect();
    let beta = on_circle(1.0, &mut rng);
    Ok(VerblunskySequence { n, rho, seed, alphas, beta })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reproducible_and_in_the_disk() {
        let a = sample_rho_model(30, 0.5, 4).unwrap();
        assert_eq!(a, sample_rho_model(30, 0.5, 4).unwrap());
        assert!(a.alphas.iter().all(|z| z.norm() <= 0.5));
        assert!((a.beta.norm() - 1.0).abs() < 1e-15);
        assert!(sample_rho_model(3, 1.0, 0).is_err());
    }

    #[test]
    fn json_round_trip() {
        let a = sample_rho_model(5, 0.3, 1).unwrap();
        assert_eq!(VerblunskySequence::from_json(&a.to_json()).unwrap(), a);
        assert!(VerblunskySequence::from_json("{\"n\": 2}").is_err());
    }

    #[test]
    fn partners_have_size_n() {
        let a = sample_rho_model(7, 0.5, 2).unwrap();
        assert_eq!(a.cutoff().unwrap().n(), 7);
        let p = a.paraorthogonal().unwrap();
        assert_eq!(p.n(), 7);
        assert!(p.matrix.unitarity_defect() < 1e-13);
    }
}
