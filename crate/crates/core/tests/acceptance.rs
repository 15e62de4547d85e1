//! Runs every acceptance criterion and prints one PASS/FAIL line each.
//!
//! Criterion ids given as arguments restrict the run, e.g.
//! `cargo test --test acceptance -- 1 2 9`.

use resbound::acceptance::{criterion_count, run_criterion, DEFAULT_SEED};
use resbound::Tolerances;

fn main() {
    let ids: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let ids = if ids.is_empty() { (1..=criterion_count()).collect() } else { ids };
    let tol = Tolerances::default();
    let mut failed = Vec::new();
    for id in ids {
        let o = run_criterion(id, DEFAULT_SEED, &tol);
        println!("{}", o.line());
        if !o.passed {
            failed.push(id);
        }
    }
    if failed.is_empty() {
        println!("acceptance: all criteria passed");
    } else {
        println!("acceptance: failing criteria {failed:?}");
    }
}
