mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use resbound::acceptance::DEFAULT_SEED;
use resbound::Tolerances;

use output::Format;

/// Resolvent bounds for contractions, extremal Toeplitz matrices and zero
/// statistics of random orthogonal polynomials on the unit circle.
#[derive(Parser, Debug)]
#[command(name = "resbound", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Matrix size: `6`, an inclusive range `1..50`, or a list `100,200,400`.
    #[arg(long, global = true, value_parser = parse_grid)]
    pub n: Option<Grid>,

    /// Radius of the disk the Verblunsky coefficients are drawn from.
    #[arg(long, global = true)]
    pub rho: Option<f64>,

    #[arg(long, global = true)]
    pub trials: Option<usize>,

    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,

    /// Tolerance override `KEY=VAL`; repeatable.
    #[arg(long = "tol", global = true, value_name = "KEY=VAL")]
    pub tol: Vec<String>,

    /// Output file; relative paths are taken inside `RESBOUND_OUT_DIR` when set.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// Worker threads; results do not depend on it.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Norms of M_n and Q_n(1) against their closed forms.
    Extremal,
    /// Schur-algorithm norm certificates for M_n.
    Certify,
    /// Random contractions checked against the resolvent bound.
    Bounds {
        /// Points on the circle per contraction, besides the three ray points.
        #[arg(long, default_value_t = 4)]
        z_points: usize,
    },
    /// The numerical-range form of the bound with z on the boundary of Num(A).
    Numrange,
    /// Draws from the rho-model with their zeros.
    OpucSample {
        /// `popuc` (unitary, zeros on the circle) or `cutoff` (zeros of Phi_n).
        #[arg(long, default_value = "popuc")]
        kind: String,
    },
    /// Arc counts of zeros against the Poisson law.
    OpucPoisson {
        /// Scaled interval `a:b`; repeatable.
        #[arg(long = "interval", value_parser = parse_interval)]
        intervals: Vec<(f64, f64)>,
    },
    /// Deep-zero counts and minimum gaps across sizes.
    ZeroTails {
        #[arg(long, default_value_t = 4)]
        k: u32,
    },
    /// Runs the acceptance suite.
    VerifyAll {
        /// Criterion ids to run; all when omitted.
        #[arg(long, value_delimiter = ',')]
        criteria: Vec<usize>,
    },
}

/// Sizes given to `--n`.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid(pub Vec<usize>);

pub fn parse_grid(s: &str) -> Result<Grid, String> {
    let bad = |_| format!("'{s}' is not a size, range a..b or list");
    let grid: Vec<usize> = if let Some((a, b)) = s.split_once("..") {
        let (a, b): (usize, usize) = (a.trim().parse().map_err(bad)?, b.trim().parse().map_err(bad)?);
        (a..=b).collect()
    } else {
        s.split(',').map(|x| x.trim().parse().map_err(bad)).collect::<Result<_, _>>()?
    };
    if grid.is_empty() || grid.contains(&0) {
        return Err(format!("'{s}' must contain sizes of at least 1"));
    }
    Ok(Grid(grid))
}

fn parse_interval(s: &str) -> Result<(f64, f64), String> {
    let (a, b) = s.split_once(':').ok_or_else(|| format!("expected a:b, got '{s}'"))?;
    let a: f64 = a.trim().parse().map_err(|_| format!("bad interval start in '{s}'"))?;
    let b: f64 = b.trim().parse().map_err(|_| format!("bad interval end in '{s}'"))?;
    Ok((a, b))
}

pub enum Status {
    Ok,
    Falsified,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t.max(1)).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let mut tol = Tolerances::default();
    for t in &cli.tol {
        if let Err(e) = tol.apply(t) {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match commands::run(&cli, &tol) {
        Ok(Status::Ok) => ExitCode::SUCCESS,
        Ok(Status::Falsified) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grids() {
        assert_eq!(parse_grid("6").unwrap().0, vec![6]);
        assert_eq!(parse_grid("1..4").unwrap().0, vec![1, 2, 3, 4]);
        assert_eq!(parse_grid("100,200").unwrap().0, vec![100, 200]);
        assert!(parse_grid("0..3").is_err());
        assert!(parse_grid("x").is_err());
        assert!(parse_grid("5..2").is_err());
    }

    #[test]
    fn intervals() {
        assert_eq!(parse_interval("0:1").unwrap(), (0.0, 1.0));
        assert!(parse_interval("1").is_err());
    }
}
