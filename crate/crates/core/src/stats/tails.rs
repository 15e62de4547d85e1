use std::f64::consts::{PI, TAU};

use num_complex::Complex64;

use super::arcs::in_arc;
use crate::error::{Error, Result};

/// `#{ j : |z_j| < 1 - n^{-k} }`.
pub fn modulus_tail(zeros: &[Complex64], n: usize, k: u32) -> Result<usize> {
    if k == 0 {
        return Err(Error::input("k must be at least 1"));
    }
    let r = 1.0 - (n as f64).powi(-(k as i32));
    Ok(zeros.iter().filter(|z| z.norm() < r).count())
}

/// Smallest `|z_j - z_k|` over pairs of (nearly) unimodular zeros.
///
/// Zeros are sorted by argument (ties by modulus) and each is compared with
/// its successors until the lower bound `2 r_min sin(dtheta / 2)` exceeds the
/// best distance so far; the result is the exact pairwise minimum.
pub fn min_gap(zeros: &[Complex64]) -> Result<f64> {
    if zeros.len() < 2 {
        return Err(Error::input("need at least two zeros"));
    }
    if let Some(z) = zeros.iter().find(|z| (z.norm() - 1.0).abs() > 1e-6) {
        return Err(Error::domain(format!("zero {z} is not on the unit circle")));
    }
    let mut sorted: Vec<(f64, Complex64)> = zeros.iter().map(|z| (z.arg().rem_euclid(TAU), *z)).collect();
    sorted.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.norm().total_cmp(&b.1.norm())));
    let m = sorted.len();
    let r_min = zeros.iter().map(|z| z.norm()).fold(f64::INFINITY, f64::min);
    let mut best = f64::INFINITY;
    for i in 0..m {
        let (ti, zi) = sorted[i];
        for step in 1..m {
            let (tj, zj) = sorted[(i + step) % m];
            let dtheta = (tj - ti).rem_euclid(TAU);
            if dtheta > PI {
                break;
            }
            let lower = 2.0 * r_min * (dtheta / 2.0).sin();
            if lower > best * (1.0 + 1e-9) {
                break;
            }
            best = best.min((zi - zj).norm());
        }
    }
    Ok(best)
}

/// Nearest-rank quantile of an unsorted sample; NaN when empty.
pub fn quantile(sample: &[f64], q: f64) -> f64 {
    if sample.is_empty() {
        return f64::NAN;
    }
    let mut s = sample.to_vec();
    s.sort_by(f64::total_cmp);
    let rank = (q.clamp(0.0, 1.0) * s.len() as f64).ceil() as usize;
    s[rank.saturating_sub(1).min(s.len() - 1)]
}

/// Two-sided Wilson score interval for a binomial proportion.
pub fn wilson_interval(successes: usize, trials: usize, z: f64) -> (f64, f64) {
    if trials == 0 {
        return (0.0, 1.0);
    }
    let n = trials as f64;
    let p = successes as f64 / n;
    let z2 = z * z;
    let centre = (p + z2 / (2.0 * n)) / (1.0 + z2 / n);
    let radius = z / (1.0 + z2 / n) * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt();
    ((centre - radius).max(0.0), (centre + radius).min(1.0))
}

pub const Z95: f64 = 1.959_963_984_540_054;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairOccupancy {
    /// Arcs examined.
    pub samples: usize,
    /// Arcs holding at least two zeros.
    pub hits: usize,
    pub probability: f64,
    pub lower: f64,
    pub upper: f64,
    /// `(n |I| / 2 pi)^2 / 2`.
    pub bound: f64,
}

/// Frequency of two or more zeros in an arc of length `length`, one arc per
/// `(zeros, start)` pair; `n` is the number of zeros per sample.
pub fn pair_occupancy<'a>(
    samples: impl IntoIterator<Item = (&'a [Complex64], f64)>,
    length: f64,
    n: usize,
) -> PairOccupancy {
    let (mut count, mut hits) = (0, 0);
    for (zeros, start) in samples {
        count += 1;
        if length > 0.0 && zeros.iter().filter(|z| in_arc(**z, start, length)).count() >= 2 {
            hits += 1;
        }
    }
    let (lower, upper) = wilson_interval(hits, count, Z95);
    let bound = 0.5 * (n as f64 * length / TAU).powi(2);
    PairOccupancy {
        samples: count,
        hits,
        probability: if count == 0 { 0.0 } else { hits as f64 / count as f64 },
        lower,
        upper,
        bound,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute(z: &[Complex64]) -> f64 {
        let mut best = f64::INFINITY;
        for i in 0..z.len() {
            for j in i + 1..z.len() {
                best = best.min((z[i] - z[j]).norm());
            }
        }
        best
    }

    #[test]
    fn tails() {
        let z = vec![Complex64::default(); 6];
        assert_eq!(modulus_tail(&z, 6, 4).unwrap(), 6);
        let u: Vec<Complex64> = (0..5).map(|k| Complex64::from_polar(1.0, k as f64)).collect();
        assert_eq!(modulus_tail(&u, 5, 1).unwrap(), 0);
        assert!(modulus_tail(&u, 5, 0).is_err());
    }

    #[test]
    fn gaps_of_roots_of_unity() {
        for m in [2, 3, 7, 40] {
            let z: Vec<Complex64> = (0..m).map(|k| Complex64::from_polar(1.0, 0.3 + TAU * k as f64 / m as f64)).collect();
            assert!((min_gap(&z).unwrap() - 2.0 * (PI / m as f64).sin()).abs() < 1e-12);
        }
        let w = Complex64::from_polar(1.0, 1.0);
        assert_eq!(min_gap(&[w, w, -w]).unwrap(), 0.0);
        assert!(min_gap(&[w]).is_err());
    }

    #[test]
    fn gap_matches_brute_force_exactly() {
        let mut s = 12345u64;
        let mut next = || {
            s ^= s << 13;
            s ^= s >> 7;
            s ^= s << 17;
            (s >> 11) as f64 / (1u64 << 53) as f64
        };
        for _ in 0..50 {
            let z: Vec<Complex64> =
                (0..60).map(|_| Complex64::from_polar(1.0 + 1e-7 * (next() - 0.5), TAU * next())).collect();
            assert_eq!(min_gap(&z).unwrap(), brute(&z));
        }
    }

    #[test]
    fn nearest_rank_quantiles() {
        let x = [5.0, 1.0, 4.0, 2.0, 3.0];
        assert_eq!(quantile(&x, 0.5), 3.0);
        assert_eq!(quantile(&x, 0.0), 1.0);
        assert_eq!(quantile(&x, 1.0), 5.0);
        assert!(quantile(&[], 0.5).is_nan());
    }

    #[test]
    fn wilson_contains_proportion() {
        let (lo, hi) = wilson_interval(10, 2000, Z95);
        assert!(lo < 0.005 && hi > 0.005);
        assert!(wilson_interval(0, 100, Z95).0 < 1e-15);
    }

    #[test]
    fn occupancy_edge_cases() {
        let z: Vec<Complex64> = (0..5).map(|k| Complex64::from_polar(1.0, 0.1 + k as f64)).collect();
        let none = pair_occupancy(vec![(z.as_slice(), 0.0)], 0.0, 5);
        assert_eq!(none.probability, 0.0);
        let all = pair_occupancy(vec![(z.as_slice(), 0.0)], TAU, 5);
        assert_eq!(all.probability, 1.0);
        assert!(all.bound >= 1.0);
    }
}
