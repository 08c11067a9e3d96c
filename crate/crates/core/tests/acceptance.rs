//! Acceptance suite: one line per criterion, non-zero exit if any fails.
//! `ACCEPTANCE_SEED` overrides the seed of the randomized criteria.

use std::process::ExitCode;

use curvecount::acceptance::{run_all, DEFAULT_SEED};

fn main() -> ExitCode {
    let seed = std::env::var("ACCEPTANCE_SEED")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(DEFAULT_SEED);
    let reports = run_all(seed);
    for r in &reports {
        println!("{r}");
    }
    let failed = reports.iter().filter(|r| !r.passed).count();
    println!(
        "acceptance: {} passed, {failed} failed",
        reports.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
