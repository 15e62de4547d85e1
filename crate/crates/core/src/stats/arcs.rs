use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Arcs `(theta0 + 2 pi a_m / n, theta0 + 2 pi b_m / n)` in units of the mean
/// zero spacing.
#[derive(Debug, Clone, PartialEq)]
pub struct ArcSpec {
    pub theta0: f64,
    pub intervals: Vec<(f64, f64)>,
    pub n: usize,
}

impl ArcSpec {
    pub fn new(theta0: f64, intervals: Vec<(f64, f64)>, n: usize) -> Result<Self> {
        if n == 0 || !theta0.is_finite() {
            return Err(Error::input("n must be positive and theta0 finite"));
        }
        for (k, &(a, b)) in intervals.iter().enumerate() {
            if !(a < b) || !a.is_finite() || !b.is_finite() {
                return Err(Error::input(format!("interval {k} = ({a}, {b}) is empty")));
            }
            if k > 0 && intervals[k - 1].1 > a {
                return Err(Error::input(format!("interval {k} overlaps its predecessor")));
            }
        }
        if let (Some(first), Some(last)) = (intervals.first(), intervals.last()) {
            if last.1 - first.0 > n as f64 {
                return Err(Error::input("intervals wrap around the circle onto each other"));
            }
        }
        Ok(ArcSpec { theta0, intervals, n })
    }

    /// `(start angle, angular length)` of interval `m`.
    pub fn arc(&self, m: usize) -> (f64, f64) {
        let (a, b) = self.intervals[m];
        let scale = TAU / self.n as f64;
        (self.theta0 + scale * a, scale * (b - a))
    }

    pub fn lengths(&self) -> Vec<f64> {
        self.intervals.iter().map(|(a, b)| b - a).collect()
    }
}

/// `arg z` lies in the open arc of the given start and length.
pub fn in_arc(z: Complex64, start: f64, length: f64) -> bool {
    let t = (z.arg() - start).rem_euclid(TAU);
    t > 0.0 && t < length
}

pub fn arc_counts(zeros: &[Complex64], spec: &ArcSpec) -> Vec<usize> {
    (0..spec.intervals.len())
        .map(|m| {
            let (start, length) = spec.arc(m);
            zeros.iter().filter(|z| in_arc(**z, start, length)).count()
        })
        .collect()
}

/// Empirical law of the count in each interval.
#[derive(Debug, Clone, PartialEq)]
pub struct CountHistogram {
    pub trials: usize,
    /// `frequencies[m][k]`: fraction of trials with `k` zeros in interval `m`.
    pub frequencies: Vec<Vec<f64>>,
}

impl CountHistogram {
    /// From per-trial counts, `counts[trial][interval]`.
    pub fn from_counts(counts: &[Vec<usize>]) -> Result<Self> {
        let trials = counts.len();
        if trials == 0 {
            return Err(Error::input("no trials"));
        }
        let intervals = counts[0].len();
        if counts.iter().any(|c| c.len() != intervals) {
            return Err(Error::input("trials disagree on the number of intervals"));
        }
        let frequencies = (0..intervals)
            .map(|m| {
                let max = counts.iter().map(|c| c[m]).max().unwrap_or(0);
                let mut f = vec![0.0; max + 1];
                for c in counts {
                    f[c[m]] += 1.0;
                }
                f.iter().map(|x| x / trials as f64).collect()
            })
            .collect();
        Ok(CountHistogram { trials, frequencies })
    }

    pub fn mean(&self, m: usize) -> f64 {
        self.frequencies[m].iter().enumerate().map(|(k, f)| k as f64 * f).sum()
    }
}

pub fn poisson_pmf(mean: f64, k: usize) -> f64 {
    let mut p = (-mean).exp();
    for j in 1..=k {
        p *= mean / j as f64;
    }
    p
}

pub const TV_TRUNCATION: usize = 10;

/// Total variation distance between the empirical count law of each interval
/// and Poisson with mean `b_m - a_m`; counts `>= 10` are lumped.
pub fn poisson_compare(hist: &CountHistogram, spec: &ArcSpec) -> Result<Vec<f64>> {
    if hist.trials < 100 {
        return Err(Error::input(format!("{} trials; at least 100 needed", hist.trials)));
    }
    if hist.frequencies.len() != spec.intervals.len() {
        return Err(Error::input("histogram and arc spec disagree on intervals"));
    }
    Ok(spec
        .lengths()
        .iter()
        .zip(&hist.frequencies)
        .map(|(&mean, freq)| {
            let emp = |k: usize| freq.get(k).copied().unwrap_or(0.0);
            let mut tv = 0.0;
            let mut head_model = 0.0;
            for k in 0..TV_TRUNCATION {
                let p = poisson_pmf(mean, k);
                tv += (emp(k) - p).abs();
                head_model += p;
            }
            let tail_emp: f64 = freq.iter().skip(TV_TRUNCATION).sum();
            let tail_model = (1.0 - head_model).max(0.0);
            0.5 * (tv + (tail_emp - tail_model).abs())
        })
        .collect())
}

/// Pearson correlation; 0 when either sample is constant.
pub fn correlation(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len().min(ys.len());
    if n < 2 {
        return 0.0;
    }
    let mx = xs[..n].iter().sum::<f64>() / n as f64;
    let my = ys[..n].iter().sum::<f64>() / n as f64;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (x, y) in xs[..n].iter().zip(&ys[..n]) {
        sxy += (x - mx) * (y - my);
        sxx += (x - mx) * (x - mx);
        syy += (y - my) * (y - my);
    }
    if sxx == 0.0 || syy == 0.0 {
        0.0
    } else {
        sxy / (sxx * syy).sqrt()
    }
}
