//! Numerical thresholds used across the crate.
//!
//! Every threshold has a contractual default. Runs can override individual
//! values by name with `KEY=VAL` strings (see [`Tolerances::set`]).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// QR deflation threshold, relative to a norm estimate of the matrix.
    pub deflation: f64,
    /// QR iteration budget per restart is `qr_iterations_per_n * n`.
    pub qr_iterations_per_n: usize,
    /// Power iteration stops when the Rayleigh quotient changes by less than this.
    pub power_rel_change: f64,
    pub power_max_iter: usize,
    /// Singular values below `rank * sigma_max` count as zero.
    pub rank: f64,
    /// `|gamma| >= 1 - schur_unimodular` ends the Schur recursion.
    pub schur_unimodular: f64,
    /// Largest below-diagonal entry accepted as upper triangular Toeplitz.
    pub uttm_structure: f64,
    /// Largest accepted `||A|| - 1` for inputs that must be contractions.
    pub contraction_slack: f64,
    /// Slack allowed before a bound check reports a violation.
    pub report: f64,
    /// Pivot floor for solves, relative to the matrix scale.
    pub singular: f64,
    /// Zeros closer than this are merged into one multiple zero.
    pub cluster_radius: f64,
    pub newton_steps: usize,
    /// Slack on `||f(A)|| <= 1`.
    pub von_neumann: f64,
    /// Localization fits start at distance `localization_window * ln n`.
    pub localization_window: f64,
    pub localization_r2: f64,
    pub aberth_tol: f64,
    pub aberth_max_sweeps: usize,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            deflation: 1e-13,
            qr_iterations_per_n: 30,
            power_rel_change: 1e-14,
            power_max_iter: 10_000,
            rank: 1e-8,
            schur_unimodular: 1e-7,
            uttm_structure: 1e-12,
            contraction_slack: 1e-10,
            report: 1e-8,
            singular: 1e-13,
            cluster_radius: 1e-7,
            newton_steps: 5,
            von_neumann: 1e-9,
            localization_window: 4.0,
            localization_r2: 0.8,
            aberth_tol: 1e-13,
            aberth_max_sweeps: 200,
        }
    }
}

impl Tolerances {
    pub const KEYS: &'static [&'static str] = &[
        "deflation",
        "qr_iterations_per_n",
        "power_rel_change",
        "power_max_iter",
        "rank",
        "schur_unimodular",
        "uttm_structure",
        "contraction_slack",
        "report",
        "singular",
        "cluster_radius",
        "newton_steps",
        "von_neumann",
        "localization_window",
        "localization_r2",
        "aberth_tol",
        "aberth_max_sweeps",
    ];

    /// Sets one threshold by name.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        fn real(key: &str, v: &str) -> Result<f64> {
            let x: f64 = v
                .parse()
                .map_err(|_| Error::input(format!("{key}: '{v}' is not a number")))?;
            if !(x.is_finite() && x >= 0.0) {
                return Err(Error::input(format!("{key}: must be finite and nonnegative")));
            }
            Ok(x)
        }
        fn count(key: &str, v: &str) -> Result<usize> {
            v.parse()
                .map_err(|_| Error::input(format!("{key}: '{v}' is not a nonnegative integer")))
        }
        match key {
            "deflation" => self.deflation = real(key, value)?,
            "qr_iterations_per_n" => self.qr_iterations_per_n = count(key, value)?,
            "power_rel_change" => self.power_rel_change = real(key, value)?,
            "power_max_iter" => self.power_max_iter = count(key, value)?,
            "rank" => self.rank = real(key, value)?,
            "schur_unimodular" => self.schur_unimodular = real(key, value)?,
            "uttm_structure" => self.uttm_structure = real(key, value)?,
            "contraction_slack" => self.contraction_slack = real(key, value)?,
            "report" => self.report = real(key, value)?,
            "singular" => self.singular = real(key, value)?,
            "cluster_radius" => self.cluster_radius = real(key, value)?,
            "newton_steps" => self.newton_steps = count(key, value)?,
            "von_neumann" => self.von_neumann = real(key, value)?,
            "localization_window" => self.localization_window = real(key, value)?,
            "localization_r2" => self.localization_r2 = real(key, value)?,
            "aberth_tol" => self.aberth_tol = real(key, value)?,
            "aberth_max_sweeps" => self.aberth_max_sweeps = count(key, value)?,
            _ => return Err(Error::input(format!("unknown tolerance key '{key}'"))),
        }
        Ok(())
    }

    /// Applies a `KEY=VAL` override.
    pub fn apply(&mut self, assignment: &str) -> Result<()> {
        let (key, value) = assignment
            .split_once('=')
            .ok_or_else(|| Error::input(format!("expected KEY=VAL, got '{assignment}'")))?;
        self.set(key.trim(), value.trim())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overrides_by_name() {
        let mut t = Tolerances::default();
        t.apply("rank=1e-6").unwrap();
        t.apply("newton_steps = 2").unwrap();
        assert_eq!(t.rank, 1e-6);
        assert_eq!(t.newton_steps, 2);
    }

    #[test]
    fn rejects_bad_overrides() {
        let mut t = Tolerances::default();
        assert!(t.apply("rank").is_err());
        assert!(t.apply("nope=1").is_err());
        assert!(t.apply("rank=-1").is_err());
        assert!(t.apply("power_max_iter=1.5").is_err());
    }

    #[test]
    fn every_key_is_settable() {
        for key in Tolerances::KEYS {
            let mut t = Tolerances::default();
            t.set(key, "3").unwrap();
        }
    }
}
