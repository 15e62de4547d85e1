//! The acceptance suite: thirteen end-to-end checks with fixed seeds,
//! tolerances and time budgets.

use std::f64::consts::{SQRT_2, TAU};
use std::time::{Duration, Instant};

use num_complex::Complex64;
use rand::Rng;
use rayon::prelude::*;

use crate::bounds::{
    check_minpoly_variant, check_numerical_range_variant, check_power_bounded_variant, entrywise_check,
    extremality_search, polar_unitary_interpolant_check, positivity_check, random_contraction, theorem1_batch,
    trial_seed, von_neumann_check, Construction, DiskMap,
};
use crate::error::{Error, Result};
use crate::extremal::{build, c_of_n, closed_form_norm, d_eigenpairs, mtilde_eigenpairs, MatrixKind, NormKind};
use crate::linalg::{
    characteristic_polynomial, numerical_range_support, operator_norm, schur_triangularize, singular_values,
    ComplexMatrix,
};
use crate::opuc::{
    cmv, eigenvector_profiles, rank_one_constant, rank_one_excess, sample_rho_model, szego, zeros_of_cmv,
    zeros_of_parameters, VerblunskySequence, ZeroSet,
};
use crate::rng::{ginibre, in_disk, on_circle, substream, unit_vector, DiskSampling, Domain};
use crate::stats::{
    arc_counts, correlation, in_arc, localization_fit, localization_profile, modulus_tail, pair_occupancy,
    poisson_compare, wilson_interval, ArcSpec, CountHistogram, LocalizationProfile, Z95,
};
use crate::toeplitz::{a_family, generating_prefixes, norm_certificate, BlaschkeProduct};
use crate::tolerances::Tolerances;

pub const DEFAULT_SEED: u64 = 20_240_917;

#[derive(Debug, Clone)]
pub struct Outcome {
    pub id: usize,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
    pub budget: Duration,
}

impl Outcome {
    pub fn line(&self) -> String {
        format!(
            "{} criterion {:>2} {}: {} [{:.1}s / {}s]",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.title,
            self.detail,
            self.elapsed.as_secs_f64(),
            self.budget.as_secs()
        )
    }
}

struct Verdict {
    passed: bool,
    detail: String,
}

type Check = fn(u64, &Tolerances) -> Result<Verdict>;

const CRITERIA: [(&str, u64, Check); 13] = [
    ("sharp constant", 5, sharp_constant),
    ("Q-norm identity", 5, q_norm),
    ("eigenpair residuals", 30, eigenpair_residuals),
    ("sharpness from below", 60, sharpness),
    ("no falsification", 120, no_falsification),
    ("entrywise and positivity", 60, entrywise),
    ("variants", 180, variants),
    ("Toeplitz certificates", 10, certificates),
    ("OPUC structure", 60, opuc_structure),
    ("Poisson statistics", 600, poisson_statistics),
    ("modulus tails", 600, modulus_tails),
    ("pair occupancy", 300, occupancy),
    ("localization", 600, localization),
];

pub fn criterion_count() -> usize {
    CRITERIA.len()
}

/// Runs criterion `id` (1-based).
pub fn run_criterion(id: usize, seed: u64, tol: &Tolerances) -> Outcome {
    let (title, budget, check) = CRITERIA[id - 1];
    let budget = Duration::from_secs(budget);
    let start = Instant::now();
    let verdict = check(seed, tol);
    let elapsed = start.elapsed();
    let (passed, detail) = match verdict {
        Ok(v) => (v.passed && elapsed < budget, v.detail),
        Err(e) => (false, format!("error: {e}")),
    };
    Outcome { id, title, passed, detail, elapsed, budget }
}

pub fn run_all(seed: u64, tol: &Tolerances, mut on_done: impl FnMut(&Outcome)) -> Vec<Outcome> {
    (1..=CRITERIA.len())
        .map(|id| {
            let o = run_criterion(id, seed, tol);
            on_done(&o);
            o
        })
        .collect()
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

fn sharp_constant(_: u64, _: &Tolerances) -> Result<Verdict> {
    let mut worst: f64 = 0.0;
    for n in 1..=50 {
        worst = worst.max(rel(operator_norm(&build(MatrixKind::M, n, None)?)?, c_of_n(n)));
    }
    let exact = [1.0, 1.0 + SQRT_2, 2.0 + 3f64.sqrt()];
    let mut small: f64 = 0.0;
    for (k, e) in exact.iter().enumerate() {
        small = small.max(rel(operator_norm(&build(MatrixKind::M, k + 1, None)?)?, *e));
    }
    Ok(Verdict {
        passed: worst <= 1e-10 && small <= 1e-10,
        detail: format!("max rel error {worst:.2e} for n = 1..50, {small:.2e} against 1, 1+sqrt2, 2+sqrt3"),
    })
}

fn q_norm(_: u64, _: &Tolerances) -> Result<Verdict> {
    let mut worst: f64 = 0.0;
    for n in 1..=50 {
        let i_minus_n = &ComplexMatrix::identity(n) - &build(MatrixKind::N, n, None)?;
        let smin = singular_values(&i_minus_n)?.into_iter().fold(f64::INFINITY, f64::min);
        worst = worst.max(rel(1.0 / smin, closed_form_norm(NormKind::Q1, n)));
    }
    Ok(Verdict { passed: worst <= 1e-10, detail: format!("max rel error {worst:.2e} for n = 1..50") })
}

fn eigenpair_residuals(_: u64, _: &Tolerances) -> Result<Verdict> {
    let worst = (1..=100usize)
        .into_par_iter()
        .map(|n| -> Result<f64> {
            let m = mtilde_eigenpairs(n).residual(&build(MatrixKind::Mtilde, n, None)?);
            let d = d_eigenpairs(n).residual(&build(MatrixKind::D, n, None)?);
            Ok(m.max(d))
        })
        .collect::<Result<Vec<f64>>>()?
        .into_iter()
        .fold(0.0, f64::max);
    Ok(Verdict { passed: worst <= 1e-9, detail: format!("max residual {worst:.2e} for n = 1..100") })
}

fn sharpness(seed: u64, tol: &Tolerances) -> Result<Verdict> {
    let mut passed = true;
    let mut parts = Vec::new();
    for n in 2..=8 {
        let r = extremality_search(n, 300, trial_seed(seed, n as u64), true, tol)?;
        let c = r.constant;
        passed &= r.best_ratio >= (1.0 - 1e-3) * c && r.best_ratio <= c + 1e-8;
        parts.push(format!("{n}:{:.6}", r.best_ratio / c));
    }
    Ok(Verdict { passed, detail: format!("best/cot by n {}", parts.join(" ")) })
}

fn no_falsification(seed: u64, tol: &Tolerances) -> Result<Verdict> {
    let mut passed = true;
    let mut parts = Vec::new();
    for n in [2, 4, 8] {
        let b = theorem1_batch(n, 10_000, trial_seed(seed, n as u64), &Construction::ALL, 2, tol)?;
        let v = b.violations().count();
        passed &= v == 0;
        parts.push(format!("n={n}: {} checks, {v} violations, max ratio/cot {:.6}", b.reports.len(), b.max_ratio_over_constant()));
    }
    Ok(Verdict { passed, detail: parts.join("; ") })
}

fn schur_form_contraction(n: usize, seed: u64, i: usize) -> Result<ComplexMatrix> {
    let s = random_contraction(n, seed, Construction::ALL[i % 3])?;
    Ok(schur_triangularize(&s.matrix)?.t)
}

fn entrywise(seed: u64, tol: &Tolerances) -> Result<Verdict> {
    let mut passed = true;
    let mut parts = Vec::new();
    for n in [3usize, 6] {
        let reports = (0..1000usize)
            .into_par_iter()
            .map(|i| {
                let t = schur_form_contraction(n, trial_seed(seed, (n * 1000 + i) as u64), i)?;
                Ok((entrywise_check(&t, tol)?, positivity_check(&t, tol)?))
            })
            .collect::<Result<Vec<_>>>()?;
        let ok = reports.iter().filter(|(e, p)| e.satisfied && p.satisfied).count();
        let up = reports.iter().map(|r| r.0.max_upper).fold(0.0, f64::max);
        let diag = reports.iter().map(|r| r.0.max_diagonal).fold(0.0, f64::max);
        let min_eig = reports.iter().map(|r| r.1.min_eigenvalue / r.1.scale).fold(f64::INFINITY, f64::min);
        passed &= ok == reports.len();
        parts.push(format!("n={n}: {ok}/1000 (max upper {up:.4}, diag {diag:.4}, min eig/scale {min_eig:.1e})"));
    }
    Ok(Verdict { passed, detail: parts.join("; ") })
}

fn variants(seed: u64, tol: &Tolerances) -> Result<Verdict> {
    let mut failures = Vec::new();

    // z on the boundary of the numerical range
    let numrange = (0..1000usize)
        .into_par_iter()
        .map(|i| -> Result<Option<bool>> {
            let s = trial_seed(seed, i as u64);
            let a = random_contraction(2 + i % 5, s, Construction::ALL[i % 3])?.matrix;
            let theta = substream(s, Domain::Spectral, 1).random::<f64>() * TAU;
            let z = numerical_range_support(&a, &[theta])?[0].boundary;
            match check_numerical_range_variant(&a, z) {
                Ok(r) => Ok(Some(r.satisfied)),
                Err(Error::Singular(_)) => Ok(None),
                Err(e) => Err(e),
            }
        })
        .collect::<Result<Vec<_>>>()?;
    let nr_ok = numrange.iter().filter(|r| **r == Some(true)).count();
    let nr_skip = numrange.iter().filter(|r| r.is_none()).count();
    if nr_ok + nr_skip != numrange.len() {
        failures.push("numerical range");
    }

    // duplicated blocks
    let mut mp_ok = 0;
    let mut mp_total = 0;
    let a4 = a_family(4, 0.9)?;
    let dup = ComplexMatrix::direct_sum(&[&a4, &a4]);
    let r = check_minpoly_variant(&dup, Complex64::new(1.0, 0.0), tol)?;
    mp_total += 1;
    mp_ok += usize::from(r.degree == 4 && r.report.satisfied);
    for i in 0..100usize {
        let s = trial_seed(seed ^ 0x6d70, i as u64);
        let m = 2 + i % 3;
        let b = random_contraction(m, s, Construction::ALL[i % 3])?.matrix;
        let z = on_circle(1.0, &mut substream(s, Domain::Spectral, 2));
        mp_total += 1;
        match check_minpoly_variant(&ComplexMatrix::direct_sum(&[&b, &b]), z, tol) {
            Ok(r) => mp_ok += usize::from(r.degree == m && r.report.satisfied),
            Err(Error::Singular(_)) => mp_total -= 1,
            Err(e) => return Err(e),
        }
    }
    if mp_ok != mp_total {
        failures.push("minimal polynomial");
    }

    // power bounded, not contractive: S (0.9 T) S^{-1}
    let power = (0..100usize)
        .into_par_iter()
        .map(|i| -> Result<(bool, f64)> {
            let s = trial_seed(seed ^ 0x7077, i as u64);
            let n = 2 + i % 4;
            let t = random_contraction(n, s, Construction::ALL[i % 3])?.matrix.scale_real(0.9);
            let g = ginibre(n, &mut substream(s, Domain::Spectral, 3));
            let sim = &ComplexMatrix::identity(n) + &g.scale_real(0.5 / operator_norm(&g)?);
            let a = sim.matmul(&t).matmul(&crate::linalg::inverse(&sim)?);
            let r = check_power_bounded_variant(&a, tol)?;
            Ok((r.report.satisfied, r.fitted_exponent))
        })
        .collect::<Result<Vec<_>>>()?;
    let pw_ok = power.iter().filter(|r| r.0).count();
    let max_exp = power.iter().map(|r| r.1).fold(f64::NEG_INFINITY, f64::max);
    if pw_ok != power.len() {
        failures.push("power bounded");
    }

    // von Neumann with random Blaschke products
    let vn = (0..1000usize)
        .into_par_iter()
        .map(|i| -> Result<(bool, f64)> {
            let s = trial_seed(seed ^ 0x766e, i as u64);
            let a = random_contraction(2 + i % 5, s, Construction::ALL[i % 3])?.matrix.scale_real(0.95);
            let mut rng = substream(s, Domain::Search, 1);
            let zeros = (0..1 + i % 3).map(|_| in_disk(0.9, DiskSampling::Area, &mut rng)).collect();
            let f = DiskMap::Blaschke(BlaschkeProduct::new(on_circle(1.0, &mut rng), zeros)?);
            let r = von_neumann_check(&a, &f, tol)?;
            Ok((r.satisfied, r.norm_fa))
        })
        .collect::<Result<Vec<_>>>()?;
    let vn_ok = vn.iter().filter(|r| r.0).count();
    let vn_max = vn.iter().map(|r| r.1).fold(0.0, f64::max);
    if vn_ok != vn.len() {
        failures.push("von Neumann");
    }

    // polar interpolant
    let polar = (0..100usize)
        .into_par_iter()
        .map(|i| -> Result<(f64, f64)> {
            let s = trial_seed(seed ^ 0x706f, i as u64);
            let a = random_contraction(2 + i % 5, s, Construction::ALL[i % 3])?.matrix.scale_real(0.9);
            let r = polar_unitary_interpolant_check(&a, 128)?;
            Ok((r.max_deviation, r.origin_residual))
        })
        .collect::<Result<Vec<_>>>()?;
    let pol_dev = polar.iter().map(|r| r.0).fold(0.0, f64::max);
    let pol_origin = polar.iter().map(|r| r.1).fold(0.0, f64::max);
    if pol_dev > 1e-9 || pol_origin > 1e-12 {
        failures.push("polar interpolant");
    }

    Ok(Verdict {
        passed: failures.is_empty(),
        detail: format!(
            "numrange {nr_ok}/{} ({nr_skip} on spectrum); minpoly {mp_ok}/{mp_total}; power {pw_ok}/{} (max fitted exponent {max_exp:.3}); \
             von Neumann {vn_ok}/{} (max {vn_max:.6}); polar deviation {pol_dev:.1e}, g(0) residual {pol_origin:.1e}{}",
            numrange.len() - nr_skip,
            power.len(),
            vn.len(),
            if failures.is_empty() { String::new() } else { format!("; failed: {}", failures.join(", ")) }
        ),
    })
}

fn certificates(_: u64, _: &Tolerances) -> Result<Verdict> {
    let mut uncertified = Vec::new();
    for n in 2..=16 {
        let m = build(MatrixKind::M, n, None)?;
        let cert = norm_certificate(&m)?;
        let order_ok = cert.parameters.blaschke_order().is_some_and(|k| k <= n - 1);
        if !(cert.certified && order_ok) {
            uncertified.push(n);
        }
    }
    let mut residual: f64 = 0.0;
    for n in 1..=32 {
        residual = residual.max(generating_prefixes(n)?.identity_residual());
    }
    Ok(Verdict {
        passed: uncertified.is_empty() && residual <= 1e-12,
        detail: format!("uncertified n: {uncertified:?}; generating identity residual {residual:.1e} for n <= 32"),
    })
}

fn opuc_structure(seed: u64, tol: &Tolerances) -> Result<Verdict> {
    let n = 20;
    let mut coeff: f64 = 0.0;
    let mut unitary: f64 = 0.0;
    let mut modulus: f64 = 0.0;
    let mut excess = f64::NEG_INFINITY;
    let mut constant: f64 = 0.0;
    for t in 0..100u64 {
        let s = sample_rho_model(n, 0.5, trial_seed(seed, t))?;
        let cutoff = s.cutoff()?;
        let chi = characteristic_polynomial(&cutoff.matrix)?;
        coeff = coeff.max(chi.max_coeff_diff(&szego(&s.alphas)?.to_polynomial()));
        let para = s.paraorthogonal()?;
        unitary = unitary.max(para.matrix.unitarity_defect());
        let zs = zeros_of_cmv(&para, tol)?;
        modulus = modulus.max(zs.zeros.iter().map(|z| (z.norm() - 1.0).abs()).fold(0.0, f64::max));
        let mut rng = substream(s.seed, Domain::Vectors, 0);
        let vectors: Vec<Vec<Complex64>> = (0..10).map(|_| unit_vector(n, &mut rng)).collect();
        excess = excess.max(rank_one_excess(&cutoff, &para, &vectors)?);
        for v in &vectors {
            constant = constant.max(rank_one_constant(&cutoff, &para, v));
        }
    }
    let passed = coeff <= 1e-8 && unitary <= 1e-10 && modulus <= 1e-9 && excess <= 1e-10;
    Ok(Verdict {
        passed,
        detail: format!(
            "char-poly {coeff:.1e}; unitarity {unitary:.1e}; | |z|-1 | {modulus:.1e}; \
             rank-one excess {excess:.3} over 1000 vectors (observed constant {constant:.3})"
        ),
    })
}

fn cutoff_zeros(s: &VerblunskySequence, tol: &Tolerances) -> Result<ZeroSet> {
    zeros_of_parameters(&s.alphas[..s.n - 1], s.alphas[s.n - 1], tol)
}

fn popuc_zeros(s: &VerblunskySequence, tol: &Tolerances) -> Result<ZeroSet> {
    zeros_of_parameters(&s.alphas[..s.n - 1], s.beta, tol)
}

/// Arc counts of Verblunsky zeros in the scaled intervals at a uniform
/// random `theta0` per trial.
pub fn poisson_run(
    n: usize,
    rho: f64,
    trials: usize,
    intervals: &[(f64, f64)],
    seed: u64,
    tol: &Tolerances,
) -> Result<(Vec<Vec<usize>>, Vec<f64>)> {
    let counts = (0..trials)
        .into_par_iter()
        .map(|t| {
            let s = sample_rho_model(n, rho, trial_seed(seed, t as u64))?;
            let theta0 = substream(s.seed, Domain::Spectral, 0).random::<f64>() * TAU;
            let spec = ArcSpec::new(theta0, intervals.to_vec(), n)?;
            Ok(arc_counts(&cutoff_zeros(&s, tol)?.zeros, &spec))
        })
        .collect::<Result<Vec<_>>>()?;
    let hist = CountHistogram::from_counts(&counts)?;
    let tv = poisson_compare(&hist, &ArcSpec::new(0.0, intervals.to_vec(), n)?)?;
    Ok((counts, tv))
}

fn poisson_statistics(seed: u64, tol: &Tolerances) -> Result<Verdict> {
    let (counts, tv) = poisson_run(300, 0.5, 2000, &[(0.0, 1.0), (1.0, 2.0)], seed, tol)?;
    let a: Vec<f64> = counts.iter().map(|c| c[0] as f64).collect();
    let b: Vec<f64> = counts.iter().map(|c| c[1] as f64).collect();
    let r = correlation(&a, &b);
    Ok(Verdict {
        passed: tv.iter().all(|&d| d <= 0.05) && r.abs() <= 0.1,
        detail: format!("TV {:.4}, {:.4}; count correlation {r:.4}", tv[0], tv[1]),
    })
}

/// Mean of `#{|z| < 1 - n^{-k}}` over cutoff zeros.
pub fn tail_mean(n: usize, rho: f64, trials: usize, k: u32, seed: u64, tol: &Tolerances) -> Result<f64> {
    let total = (0..trials)
        .into_par_iter()
        .map(|t| {
            let s = sample_rho_model(n, rho, trial_seed(seed, t as u64))?;
            modulus_tail(&cutoff_zeros(&s, tol)?.zeros, n, k)
        })
        .collect::<Result<Vec<usize>>>()?
        .into_iter()
        .sum::<usize>();
    Ok(total as f64 / trials as f64)
}

fn modulus_tails(seed: u64, tol: &Tolerances) -> Result<Verdict> {
    let mut cs = Vec::new();
    for n in [100usize, 200, 400] {
        let mean = tail_mean(n, 0.5, 200, 4, trial_seed(seed, n as u64), tol)?;
        cs.push((n, mean, mean / (n as f64).ln().powi(2)));
    }
    let max = cs.iter().map(|c| c.2).fold(0.0, f64::max);
    let min = cs.iter().map(|c| c.2).fold(f64::INFINITY, f64::min);
    let parts: Vec<String> = cs.iter().map(|(n, m, c)| format!("n={n}: mean {m:.2}, C {c:.3}")).collect();
    Ok(Verdict {
        passed: min > 0.0 && max / min <= 2.0,
        detail: format!("{}; C spread {:.3}", parts.join("; "), max / min),
    })
}

fn occupancy(seed: u64, tol: &Tolerances) -> Result<Verdict> {
    let n = 100;
    let length = TAU / (10.0 * n as f64);
    let zero_sets = (0..2000usize)
        .into_par_iter()
        .map(|t| Ok(popuc_zeros(&sample_rho_model(n, 0.5, trial_seed(seed, t as u64))?, tol)?.zeros))
        .collect::<Result<Vec<Vec<Complex64>>>>()?;
    let single = pair_occupancy(zero_sets.iter().map(|z| (z.as_slice(), 0.0)), length, n);
    // every trial contributes all 10n arcs of a partition of the circle
    let mut hits = 0;
    let mut samples = 0;
    for zeros in &zero_sets {
        for k in 0..10 * n {
            samples += 1;
            if zeros.iter().filter(|z| in_arc(**z, k as f64 * length, length)).count() >= 2 {
                hits += 1;
            }
        }
    }
    let (_, pooled_upper) = wilson_interval(hits, samples, Z95);
    Ok(Verdict {
        passed: pooled_upper <= single.bound,
        detail: format!(
            "pooled {hits}/{samples} arcs, upper 95% {pooled_upper:.5} vs bound {:.5}; one arc per trial {}/{} (upper {:.5})",
            single.bound,
            single.hits,
            single.samples,
            single.upper
        ),
    })
}

/// Decay fits of all eigenvectors of the unitary CMV matrix of each sample.
pub fn localization_profiles(
    samples: &[VerblunskySequence],
    tol: &Tolerances,
) -> Result<Vec<LocalizationProfile>> {
    let per = samples
        .par_iter()
        .map(|s| {
            let c = s.paraorthogonal()?;
            eigenvector_profiles(&c, tol)?
                .into_iter()
                .map(|p| localization_profile(&p.amplitudes, p.m_phi, tol.localization_window))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(per.into_iter().flatten().collect())
}

fn localization(seed: u64, tol: &Tolerances) -> Result<Verdict> {
    let n = 300;
    let samples = (0..50u64).map(|t| sample_rho_model(n, 0.5, trial_seed(seed, t))).collect::<Result<Vec<_>>>()?;
    let random = localization_fit(&localization_profiles(&samples, tol)?, tol.localization_r2);
    let free = cmv(&vec![Complex64::new(0.0, 0.0); n - 1], Complex64::new(1.0, 0.0))?;
    let free_profiles = eigenvector_profiles(&free, tol)?
        .into_iter()
        .map(|p| localization_profile(&p.amplitudes, p.m_phi, tol.localization_window))
        .collect::<Result<Vec<_>>>()?;
    let control = localization_fit(&free_profiles, tol.localization_r2);
    let passed = random.fraction_exponential >= 0.9 && random.median_slope < 0.0 && control.fraction_exponential < 0.9;
    Ok(Verdict {
        passed,
        detail: format!(
            "rho-model: {:.3} exponential of {} fitted ({} skipped), median slope {:.4}; free case: {:.3} exponential",
            random.fraction_exponential, random.fitted, random.skipped, random.median_slope, control.fraction_exponential
        ),
    })
}
