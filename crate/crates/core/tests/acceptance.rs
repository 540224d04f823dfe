//! One PASS/FAIL line per acceptance criterion. `REVCA_SEED` overrides seed 0.

use std::process::ExitCode;

use revca_core::suite::{run, TIME_LIMITS};

fn seed() -> u64 {
    std::env::var("REVCA_SEED")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(0)
}

fn main() -> ExitCode {
    let seed = seed();
    println!("acceptance suite, seed {seed}");
    let mut failed = Vec::new();
    for id in 1..=10u8 {
        let report = run(id, seed);
        println!("{report}");
        if !report.ok() {
            failed.push(id);
        }
    }
    let total: u64 = TIME_LIMITS.iter().sum();
    println!("time limits sum to {total}s");
    if failed.is_empty() {
        ExitCode::SUCCESS
    } else {
        println!("failed criteria: {failed:?}");
        ExitCode::FAILURE
    }
}
