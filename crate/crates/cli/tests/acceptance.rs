//! Runs every acceptance criterion and prints one PASS/FAIL line for each.
//! Exits nonzero if any criterion fails.

use std::process::ExitCode;

use superfiltr_cli::acceptance::{run_criterion, Options, NAMES};

fn main() -> ExitCode {
    // `cargo test -- <filter>` narrows the run; flags are ignored
    let filters: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let opts = Options::default();
    let mut failed = 0;
    let mut ran = 0;
    for (i, name) in NAMES.iter().enumerate() {
        if !filters.is_empty() && !filters.iter().any(|f| name.contains(f.as_str())) {
            continue;
        }
        let r = run_criterion(i + 1, &opts);
        println!("{}", r.line());
        ran += 1;
        failed += !r.passed as usize;
    }
    println!(
        "acceptance: {} passed, {failed} failed (seed {})",
        ran - failed,
        opts.seed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
