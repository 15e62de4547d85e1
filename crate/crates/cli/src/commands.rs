use std::f64::consts::TAU;

use anyhow::{bail, Context, Result};
use num_complex::Complex64;
use rayon::prelude::*;
use resbound::acceptance::{criterion_count, run_criterion};
use resbound::bounds::{
    check_numerical_range_variant_with, random_contraction, theorem1_batch, trial_seed, BoundReport, Construction,
};
use resbound::extremal::{build, c_of_n, closed_form_norm, MatrixKind, NormKind};
use resbound::linalg::{numerical_range_support, operator_norm, singular_values, ComplexMatrix};
use resbound::opuc::{sample_rho_model, zeros_of_parameters, ZeroSet};
use resbound::rng::{substream, Domain};
use resbound::stats::{
    arc_counts, min_gap, modulus_tail, poisson_compare, quantile, ArcSpec, CountHistogram,
};
use resbound::toeplitz::{generating_prefixes, norm_certificate};
use resbound::{Error, Tolerances};
use serde_json::{json, Value};

use crate::output::{metadata, real, resolve_path, Format, Sink};
use crate::{Cli, Command, Status};

const GAP_QUANTILES: [f64; 3] = [0.1, 0.5, 0.9];

struct Ctx<'a> {
    cli: &'a Cli,
    tol: &'a Tolerances,
}

impl Ctx<'_> {
    fn grid(&self, default: &[usize]) -> Vec<usize> {
        self.cli.n.as_ref().map_or_else(|| default.to_vec(), |g| g.0.clone())
    }

    fn rho(&self) -> Result<f64> {
        let rho = self.cli.rho.unwrap_or(0.5);
        if !(rho > 0.0 && rho < 1.0) {
            bail!(Error::input(format!("--rho {rho} must lie in (0, 1)")));
        }
        Ok(rho)
    }

    fn trials(&self, default: usize) -> Result<usize> {
        match self.cli.trials.unwrap_or(default) {
            0 => bail!(Error::input("--trials must be at least 1")),
            t => Ok(t),
        }
    }

    fn sink(&self, name: &str, config: Value) -> Result<Sink> {
        let mut config = config;
        config["seed"] = json!(self.cli.seed);
        config["format"] = json!(format!("{:?}", self.cli.format).to_lowercase());
        config["tolerances"] = serde_json::to_value(self.tol)?;
        let path = resolve_path(self.cli.out.as_deref(), name, self.cli.format);
        Sink::open(path.as_deref(), self.cli.format, &metadata(name, config))
    }
}

pub fn run(cli: &Cli, tol: &Tolerances) -> Result<Status> {
    let ctx = Ctx { cli, tol };
    match &cli.command {
        Command::Extremal => extremal(&ctx),
        Command::Certify => certify(&ctx),
        Command::Bounds { z_points } => bounds(&ctx, *z_points),
        Command::Numrange => numrange(&ctx),
        Command::OpucSample { kind } => opuc_sample(&ctx, kind),
        Command::OpucPoisson { intervals } => opuc_poisson(&ctx, intervals),
        Command::ZeroTails { k } => zero_tails(&ctx, *k),
        Command::VerifyAll { criteria } => verify_all(&ctx, criteria),
    }
}

fn extremal(ctx: &Ctx) -> Result<Status> {
    let grid = ctx.grid(&(1..=50).collect::<Vec<_>>());
    let mut sink = ctx.sink("extremal", json!({ "n": grid }))?;
    sink.columns(&["n", "norm_m", "cot", "rel_error", "norm_q1", "q1_closed_form", "q1_rel_error"])?;
    let mut falsified = false;
    for &n in &grid {
        let norm = operator_norm(&build(MatrixKind::M, n, None)?)?;
        let cot = c_of_n(n);
        let i_minus_n = &ComplexMatrix::identity(n) - &build(MatrixKind::N, n, None)?;
        let smin = singular_values(&i_minus_n)?.into_iter().fold(f64::INFINITY, f64::min);
        let q = closed_form_norm(NormKind::Q1, n);
        let (e1, e2) = ((norm - cot).abs() / cot, (1.0 / smin - q).abs() / q);
        falsified |= e1 > 1e-10 || e2 > 1e-10;
        sink.row(vec![json!(n), real(norm), real(cot), real(e1), real(1.0 / smin), real(q), real(e2)])?;
    }
    sink.finish()?;
    Ok(if falsified { Status::Falsified } else { Status::Ok })
}

fn certify(ctx: &Ctx) -> Result<Status> {
    let grid = ctx.grid(&(2..=16).collect::<Vec<_>>());
    let mut sink = ctx.sink("certify", json!({ "n": grid }))?;
    sink.columns(&["n", "norm", "certified", "blaschke_order", "parameters", "generating_residual"])?;
    for &n in &grid {
        let cert = norm_certificate(&build(MatrixKind::M, n, None)?)?;
        let order = cert.parameters.blaschke_order().map_or(Value::Null, |k| json!(k));
        let residual = generating_prefixes(n)?.identity_residual();
        sink.row(vec![
            json!(n),
            real(cert.norm),
            json!(cert.certified),
            order,
            json!(cert.parameters.gammas.len()),
            real(residual),
        ])?;
    }
    sink.finish()?;
    Ok(Status::Ok)
}

const REPORT_COLUMNS: [&str; 11] =
    ["n", "z_re", "z_im", "dist", "resolvent_norm", "ratio", "constant", "slack", "satisfied", "seed", "construction"];

fn report_row(r: &BoundReport, seed: u64, construction: Construction) -> Vec<Value> {
    let v = r.to_json(seed, construction.as_str());
    REPORT_COLUMNS.iter().map(|k| v[*k].clone()).collect()
}

fn bounds(ctx: &Ctx, z_points: usize) -> Result<Status> {
    let grid = ctx.grid(&[6]);
    let trials = ctx.trials(1000)?;
    let mut sink = ctx.sink("bounds", json!({ "n": grid, "trials": trials, "z_points": z_points }))?;
    sink.columns(&REPORT_COLUMNS)?;
    let mut violations = 0;
    for &n in &grid {
        let batch = theorem1_batch(n, trials, trial_seed(ctx.cli.seed, n as u64), &Construction::ALL, z_points, ctx.tol)?;
        for t in &batch.reports {
            sink.row(report_row(&t.report, t.seed, t.construction))?;
        }
        let v = batch.violations().count();
        violations += v;
        eprintln!(
            "n = {n}: {} checks, {v} violations, {} points on the spectrum, max ratio / cot = {:.9}",
            batch.reports.len(),
            batch.skipped,
            batch.max_ratio_over_constant()
        );
    }
    sink.finish()?;
    Ok(if violations > 0 { Status::Falsified } else { Status::Ok })
}

fn numrange(ctx: &Ctx) -> Result<Status> {
    let grid = ctx.grid(&[4]);
    let trials = ctx.trials(1000)?;
    let mut sink = ctx.sink("numrange", json!({ "n": grid, "trials": trials }))?;
    sink.columns(&REPORT_COLUMNS)?;
    let mut violations = 0;
    for &n in &grid {
        let master = trial_seed(ctx.cli.seed, n as u64);
        let rows = (0..trials)
            .into_par_iter()
            .map(|i| -> resbound::Result<Option<(BoundReport, u64, Construction)>> {
                let s = trial_seed(master, i as u64);
                let construction = Construction::ALL[i % 3];
                let a = random_contraction(n, s, construction)?.matrix;
                let theta = rand::Rng::random::<f64>(&mut substream(s, Domain::Spectral, 1)) * TAU;
                let z = numerical_range_support(&a, &[theta])?[0].boundary;
                match check_numerical_range_variant_with(&a, z, ctx.tol) {
                    Ok(r) => Ok(Some((r, s, construction))),
                    Err(Error::Singular(_)) => Ok(None),
                    Err(e) => Err(e),
                }
            })
            .collect::<resbound::Result<Vec<_>>>()?;
        for (r, s, c) in rows.iter().flatten() {
            violations += usize::from(!r.satisfied);
            sink.row(report_row(r, *s, *c))?;
        }
    }
    sink.finish()?;
    Ok(if violations > 0 { Status::Falsified } else { Status::Ok })
}

fn zero_list(z: &[Complex64]) -> Value {
    Value::Array(z.iter().map(|w| json!({ "re": real(w.re), "im": real(w.im) })).collect())
}

fn opuc_sample(ctx: &Ctx, kind: &str) -> Result<Status> {
    let n = *ctx.grid(&[20]).first().context("empty --n")?;
    let rho = ctx.rho()?;
    let trials = ctx.trials(1)?;
    let unitary = match kind {
        "popuc" => true,
        "cutoff" => false,
        other => bail!(Error::input(format!("--kind must be popuc or cutoff, not '{other}'"))),
    };
    let mut sink = ctx.sink("opuc-sample", json!({ "n": n, "rho": rho, "trials": trials, "kind": kind }))?;
    if sink.format() == Format::Csv {
        sink.columns(&ZeroSet::CSV_HEADER.split(',').collect::<Vec<_>>())?;
    }
    for t in 0..trials {
        let s = sample_rho_model(n, rho, trial_seed(ctx.cli.seed, t as u64))?;
        let tau = if unitary { s.beta } else { s.alphas[n - 1] };
        let zs = zeros_of_parameters(&s.alphas[..n - 1], tau, ctx.tol)?;
        match sink.format() {
            Format::Csv => {
                for (j, z) in zs.zeros.iter().enumerate() {
                    sink.row(vec![json!(t), json!(j), real(z.re), real(z.im), real(z.norm()), real(z.arg())])?;
                }
            }
            Format::Json => {
                let sequence: Value = serde_json::from_str(&s.to_json())?;
                sink.record(&json!({
                    "trial": t,
                    "sequence": sequence,
                    "source": zs.source.as_str(),
                    "zeros": zero_list(&zs.zeros),
                }))?;
            }
        }
    }
    sink.finish()?;
    Ok(Status::Ok)
}

struct TrialZeros {
    cutoff: Vec<Complex64>,
    popuc: Vec<Complex64>,
    theta0: f64,
}

fn ensemble(ctx: &Ctx, n: usize, rho: f64, trials: usize, master: u64) -> Result<Vec<TrialZeros>> {
    Ok((0..trials)
        .into_par_iter()
        .map(|t| {
            let s = sample_rho_model(n, rho, trial_seed(master, t as u64))?;
            let theta0 = rand::Rng::random::<f64>(&mut substream(s.seed, Domain::Spectral, 0)) * TAU;
            let head = &s.alphas[..n - 1];
            Ok(TrialZeros {
                cutoff: zeros_of_parameters(head, s.alphas[n - 1], ctx.tol)?.zeros,
                popuc: zeros_of_parameters(head, s.beta, ctx.tol)?.zeros,
                theta0,
            })
        })
        .collect::<resbound::Result<Vec<_>>>()?)
}

fn gap_quantiles(ens: &[TrialZeros]) -> Result<Vec<f64>> {
    let gaps = ens.iter().map(|t| min_gap(&t.popuc)).collect::<resbound::Result<Vec<f64>>>()?;
    Ok(GAP_QUANTILES.iter().map(|&q| quantile(&gaps, q)).collect())
}

fn opuc_poisson(ctx: &Ctx, intervals: &[(f64, f64)]) -> Result<Status> {
    let n = *ctx.grid(&[300]).first().context("empty --n")?;
    let rho = ctx.rho()?;
    let trials = ctx.trials(2000)?;
    let intervals = if intervals.is_empty() { vec![(0.0, 1.0)] } else { intervals.to_vec() };
    ArcSpec::new(0.0, intervals.clone(), n)?;
    let ens = ensemble(ctx, n, rho, trials, ctx.cli.seed)?;
    let counts = ens
        .iter()
        .map(|t| Ok(arc_counts(&t.cutoff, &ArcSpec::new(t.theta0, intervals.clone(), n)?)))
        .collect::<resbound::Result<Vec<_>>>()?;
    let tv = poisson_compare(&CountHistogram::from_counts(&counts)?, &ArcSpec::new(0.0, intervals.clone(), n)?)?;
    let tails = ens.iter().map(|t| modulus_tail(&t.cutoff, n, 4)).collect::<resbound::Result<Vec<_>>>()?;
    let tail_mean = tails.iter().sum::<usize>() as f64 / trials as f64;
    let gaps = gap_quantiles(&ens)?;

    let pairs: Vec<Value> = intervals.iter().map(|(a, b)| json!([real(*a), real(*b)])).collect();
    let mut sink = ctx.sink("opuc-poisson", json!({ "n": n, "rho": rho, "trials": trials, "intervals": pairs }))?;
    match sink.format() {
        Format::Csv => {
            sink.columns(&["trial", "interval_index", "count"])?;
            for (t, c) in counts.iter().enumerate() {
                for (m, k) in c.iter().enumerate() {
                    sink.row(vec![json!(t), json!(m), json!(k)])?;
                }
            }
        }
        Format::Json => sink.record(&json!({
            "n": n,
            "rho": real(rho),
            "trials": trials,
            "seed": ctx.cli.seed,
            "tv_per_interval": tv.iter().map(|x| real(*x)).collect::<Vec<_>>(),
            "tail_mean": real(tail_mean),
            "min_gap_quantiles": gaps.iter().map(|x| real(*x)).collect::<Vec<_>>(),
        }))?,
    }
    sink.finish()?;
    eprintln!("interval      TV to Poisson");
    for ((a, b), d) in intervals.iter().zip(&tv) {
        eprintln!("({a}, {b})  {d:.5}");
    }
    Ok(Status::Ok)
}

fn zero_tails(ctx: &Ctx, k: u32) -> Result<Status> {
    if k == 0 {
        bail!(Error::input("--k must be at least 1"));
    }
    let grid = ctx.grid(&[100, 200, 400]);
    let rho = ctx.rho()?;
    let trials = ctx.trials(200)?;
    let mut sink = ctx.sink("zero-tails", json!({ "n": grid, "rho": rho, "trials": trials, "k": k }))?;
    sink.columns(&["n", "trials", "k", "tail_mean", "tail_over_log2", "gap_q10", "gap_q50", "gap_q90", "small_gap_fraction"])?;
    for &n in &grid {
        let ens = ensemble(ctx, n, rho, trials, trial_seed(ctx.cli.seed, n as u64))?;
        let total: usize = ens.iter().map(|t| modulus_tail(&t.cutoff, n, k)).sum::<resbound::Result<usize>>()?;
        let mean = total as f64 / trials as f64;
        let q = gap_quantiles(&ens)?;
        let threshold = 2.0 * (n as f64).powi(-4);
        let small = ens.iter().map(|t| min_gap(&t.popuc)).filter(|g| matches!(g, Ok(g) if *g < threshold)).count();
        sink.row(vec![
            json!(n),
            json!(trials),
            json!(k),
            real(mean),
            real(mean / (n as f64).ln().powi(2)),
            real(q[0]),
            real(q[1]),
            real(q[2]),
            real(small as f64 / trials as f64),
        ])?;
    }
    sink.finish()?;
    Ok(Status::Ok)
}

fn verify_all(ctx: &Ctx, criteria: &[usize]) -> Result<Status> {
    let ids: Vec<usize> = if criteria.is_empty() { (1..=criterion_count()).collect() } else { criteria.to_vec() };
    if let Some(bad) = ids.iter().find(|&&i| i == 0 || i > criterion_count()) {
        bail!(Error::input(format!("no criterion {bad}; ids run 1..={}", criterion_count())));
    }
    let mut sink = ctx.sink("verify-all", json!({ "criteria": ids }))?;
    sink.columns(&["criterion", "title", "passed", "detail"])?;
    let mut all = true;
    for id in ids {
        let o = run_criterion(id, ctx.cli.seed, ctx.tol);
        eprintln!("{}", o.line());
        all &= o.passed;
        sink.row(vec![json!(o.id), json!(o.title), json!(o.passed), json!(o.detail)])?;
    }
    sink.finish()?;
    Ok(if all { Status::Ok } else { Status::Falsified })
}
