use num_complex::Complex64;
use rayon::prelude::*;

use super::checks::check_theorem1_with;
use super::report::BoundReport;
use super::sampling::{random_contraction, theorem1_z_points, trial_seed, Construction};
use crate::error::{Error, Result};
use crate::extremal::c_of_n;
use crate::linalg::eigenvalues_with;
use crate::rng::{on_circle, substream, Domain};
use crate::toeplitz::a_family_ratio;
use crate::tolerances::Tolerances;

/// One bound evaluation with everything needed to reproduce it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrialReport {
    pub report: BoundReport,
    pub seed: u64,
    pub construction: Construction,
}

impl TrialReport {
    pub fn to_json(&self) -> serde_json::Value {
        self.report.to_json(self.seed, self.construction.as_str())
    }
}

#[derive(Debug, Clone, Default)]
pub struct BatchOutcome {
    pub reports: Vec<TrialReport>,
    /// Points skipped because they fell on the spectrum.
    pub skipped: usize,
}

impl BatchOutcome {
    pub fn violations(&self) -> impl Iterator<Item = &TrialReport> {
        self.reports.iter().filter(|r| !r.report.satisfied)
    }

    pub fn max_ratio_over_constant(&self) -> f64 {
        self.reports.iter().map(|r| r.report.ratio / r.report.constant).fold(0.0, f64::max)
    }
}

/// Monte Carlo run of the resolvent bound. Trial `i` uses the construction
/// `constructions[i % len]` and seed `trial_seed(seed, i)`; `z_per_trial`
/// circle points plus three ray points are checked per matrix.
pub fn theorem1_batch(
    n: usize,
    trials: usize,
    seed: u64,
    constructions: &[Construction],
    z_per_trial: usize,
    tol: &Tolerances,
) -> Result<BatchOutcome> {
    if constructions.is_empty() {
        return Err(Error::input("no constructions given"));
    }
    let per_trial: Vec<Result<(Vec<TrialReport>, usize)>> = (0..trials)
        .into_par_iter()
        .map(|i| {
            let s = trial_seed(seed, i as u64);
            let construction = constructions[i % constructions.len()];
            let sample = random_contraction(n, s, construction)?;
            let rho = eigenvalues_with(&sample.matrix, tol)?.spectral_radius();
            let mut out = Vec::new();
            let mut skipped = 0;
            for z in theorem1_z_points(sample.norm, rho, z_per_trial, s) {
                match check_theorem1_with(&sample.matrix, z, tol) {
                    Ok(report) => out.push(TrialReport { report, seed: s, construction }),
                    Err(Error::Singular(_)) => skipped += 1,
                    Err(e) => return Err(e),
                }
            }
            Ok((out, skipped))
        })
        .collect();
    let mut outcome = BatchOutcome::default();
    for r in per_trial {
        let (reports, skipped) = r?;
        outcome.reports.extend(reports);
        outcome.skipped += skipped;
    }
    Ok(outcome)
}

#[derive(Debug, Clone, PartialEq)]
pub struct SearchResult {
    pub best_ratio: f64,
    pub best_witness: String,
    pub constant: f64,
}

/// `a_k = 1 - 10^{-k/4}` for `k = 1..=24`, ending at `1 - 1e-6`.
pub fn family_grid() -> Vec<f64> {
    (1..=24).map(|k| 1.0 - 10f64.powf(-(k as f64) / 4.0)).collect()
}

/// Largest ratio found over the `A_n(a)` family at `z = 1` (when
/// `use_family`) and `budget` random contractions with `z` on the unit circle.
pub fn extremality_search(n: usize, budget: usize, seed: u64, use_family: bool, tol: &Tolerances) -> Result<SearchResult> {
    if budget == 0 {
        return Err(Error::input("budget must be at least 1"));
    }
    let mut best = SearchResult { best_ratio: 0.0, best_witness: String::new(), constant: c_of_n(n) };
    if use_family {
        for a in family_grid() {
            let ratio = a_family_ratio(n, a)?;
            if ratio > best.best_ratio {
                best.best_ratio = ratio;
                best.best_witness = format!("A_{n}(a) with a = {a:.17e}, z = 1");
            }
        }
    }
    let found: Vec<Result<Option<(f64, String)>>> = (0..budget)
        .into_par_iter()
        .map(|i| {
            let s = trial_seed(seed, i as u64);
            let construction = Construction::ALL[i % 3];
            let sample = random_contraction(n, s, construction)?;
            let mut rng = substream(s, Domain::Search, 0);
            let z: Complex64 = on_circle(1.0, &mut rng);
            match check_theorem1_with(&sample.matrix, z, tol) {
                Ok(r) => Ok(Some((r.ratio, format!("{construction} seed {s}, z = {z}")))),
                Err(Error::Singular(_)) => Ok(None),
                Err(e) => Err(e),
            }
        })
        .collect();
    for f in found {
        if let Some((ratio, witness)) = f? {
            if ratio > best.best_ratio {
                best.best_ratio = ratio;
                best.best_witness = witness;
            }
        }
    }
    Ok(best)
}
