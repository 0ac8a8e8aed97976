//! Runs every acceptance criterion at its stated range and prints one
//! PASS/FAIL line each. Exits non-zero if any criterion fails.

use std::process::ExitCode;
use std::time::Instant;

use modrep_core::reps::{Caps, ModuleLibrary};
use modrep_core::verify::{run_suite, time_limit, SuiteParams, SUITES};

fn main() -> ExitCode {
    // `cargo test -- <filter>` runs only the suites whose names contain the filter
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let lib = ModuleLibrary::new(std::env::var_os("CACHE_DIR").map(Into::into));
    let caps = Caps::default();
    let mut failed = Vec::new();
    for (i, name) in SUITES.iter().enumerate() {
        let criterion = i as u8 + 1;
        if !filter.is_empty() && !filter.iter().any(|f| name.contains(f.as_str())) {
            continue;
        }
        let start = Instant::now();
        let outcome = run_suite(name, SuiteParams::default(), &lib, &caps);
        let elapsed = start.elapsed();
        let within = time_limit(criterion).is_none_or(|limit| elapsed <= limit);
        let ok = within && outcome.as_ref().is_ok_and(|r| r.passed());
        let status = if ok { "PASS" } else { "FAIL" };
        match &outcome {
            Ok(r) => {
                println!("{status} criterion {criterion:>2} {name}: {} checks, {} failed, {:.1} s", r.checks, r.failures.len(), elapsed.as_secs_f64());
                for note in &r.notes {
                    println!("       {note}");
                }
                for f in r.failures.iter().take(20) {
                    println!("       failure: {f}");
                }
            }
            Err(e) => println!("{status} criterion {criterion:>2} {name}: error: {e}"),
        }
        if !within {
            println!("       over the time limit of {} s", time_limit(criterion).unwrap().as_secs());
        }
        if !ok {
            failed.push(criterion);
        }
    }
    if failed.is_empty() {
        ExitCode::SUCCESS
    } else {
        println!("failed criteria: {failed:?}");
        ExitCode::FAILURE
    }
}
