use crate::error::{Error, Result};

/// Amplitudes below this are not resolved by a double precision eigensolver
/// and are left out of decay fits.
pub const AMPLITUDE_FLOOR: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct LocalizationProfile {
    pub m_phi: usize,
    /// `(|m - m_phi|, ln |phi_m|)` for the fitted points.
    pub points: Vec<(f64, f64)>,
    /// Least-squares slope of log amplitude against distance.
    pub slope: f64,
    pub r2: f64,
    /// Fewer than three resolved points beyond the window.
    pub skipped: bool,
}

/// Least-squares line through `(x, y)`; returns `(slope, R^2)` with
/// `R^2 = 0` when `y` is constant.
pub fn linear_fit(points: &[(f64, f64)]) -> (f64, f64) {
    let k = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / k;
    let my = points.iter().map(|p| p.1).sum::<f64>() / k;
    let (mut sxx, mut sxy, mut syy) = (0.0, 0.0, 0.0);
    for (x, y) in points {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
        syy += (y - my) * (y - my);
    }
    if sxx == 0.0 {
        return (0.0, 0.0);
    }
    let slope = sxy / sxx;
    let r2 = if syy <= f64::EPSILON * f64::EPSILON * k { 0.0 } else { (sxy * sxy / (sxx * syy)).min(1.0) };
    (slope, r2)
}

/// Decay fit of one eigenvector beyond the window `window_d * ln n` around
/// its centre `m_phi`.
pub fn localization_profile(amplitudes: &[f64], m_phi: usize, window_d: f64) -> Result<LocalizationProfile> {
    let n = amplitudes.len();
    if m_phi >= n {
        return Err(Error::input(format!("m_phi = {m_phi} outside 0..{n}")));
    }
    let window = window_d * (n as f64).ln();
    let points: Vec<(f64, f64)> = amplitudes
        .iter()
        .enumerate()
        .map(|(m, &a)| ((m as f64 - m_phi as f64).abs(), a))
        .filter(|&(d, a)| d >= window && a >= AMPLITUDE_FLOOR)
        .map(|(d, a)| (d, a.ln()))
        .collect();
    if points.len() < 3 {
        return Ok(LocalizationProfile { m_phi, points, slope: f64::NAN, r2: f64::NAN, skipped: true });
    }
    let (slope, r2) = linear_fit(&points);
    Ok(LocalizationProfile { m_phi, points, slope, r2, skipped: false })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LocalizationSummary {
    pub median_slope: f64,
    /// Fraction of fitted profiles with negative slope and `R^2 >= r2_min`.
    pub fraction_exponential: f64,
    pub fitted: usize,
    pub skipped: usize,
}

pub fn localization_fit(profiles: &[LocalizationProfile], r2_min: f64) -> LocalizationSummary {
    let fitted: Vec<&LocalizationProfile> = profiles.iter().filter(|p| !p.skipped).collect();
    let mut slopes: Vec<f64> = fitted.iter().map(|p| p.slope).collect();
    slopes.sort_by(f64::total_cmp);
    let median_slope = match slopes.len() {
        0 => f64::NAN,
        k if k % 2 == 1 => slopes[k / 2],
        k => 0.5 * (slopes[k / 2 - 1] + slopes[k / 2]),
    };
    let good = fitted.iter().filter(|p| p.slope < 0.0 && p.r2 >= r2_min).count();
    LocalizationSummary {
        median_slope,
        fraction_exponential: if fitted.is_empty() { 0.0 } else { good as f64 / fitted.len() as f64 },
        fitted: fitted.len(),
        skipped: profiles.len() - fitted.len(),
    }
}

/// Number of eigenvectors centred at `m0`.
pub fn occupancy_cap(m_phis: &[usize], m0: usize) -> usize {
    m_phis.iter().filter(|&&m| m == m0).count()
}

/// `max_m0 occupancy_cap(m_phis, m0)`.
pub fn max_occupancy(m_phis: &[usize]) -> usize {
    let mut counts = std::collections::HashMap::new();
    for &m in m_phis {
        *counts.entry(m).or_insert(0usize) += 1;
    }
    counts.into_values().max().unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_exponential() {
        let n = 200;
        let amps: Vec<f64> = (0..n).map(|m| (-((m as f64) - 60.0).abs()).exp()).collect();
        let p = localization_profile(&amps, 60, 1.0).unwrap();
        assert!(!p.skipped);
        assert!((p.slope + 1.0).abs() < 1e-9, "{}", p.slope);
        assert!((p.r2 - 1.0).abs() < 1e-12);
    }

    #[test]
    fn flat_vector_does_not_fit() {
        let n = 100;
        let amps = vec![1.0 / (n as f64).sqrt(); n];
        let p = localization_profile(&amps, 0, 4.0).unwrap();
        assert_eq!(p.r2, 0.0);
        let s = localization_fit(&[p], 0.8);
        assert_eq!(s.fraction_exponential, 0.0);
    }

    #[test]
    fn small_n_is_skipped() {
        let p = localization_profile(&[0.6, 0.8], 0, 4.0).unwrap();
        assert!(p.skipped);
    }

    #[test]
    fn occupancy() {
        assert_eq!(occupancy_cap(&[0, 1, 2, 3], 2), 1);
        assert_eq!(max_occupancy(&[0, 1, 2, 3]), 1);
        assert_eq!(max_occupancy(&[5; 7]), 7);
    }
}
