use std::process::ExitCode;

use clap::Parser;
use superfiltr_cli::commands::{exit_code, run, Cli};

fn main() -> ExitCode {
    let result = run(
        Cli::parse(),
        &mut std::io::stdout().lock(),
        &mut std::io::stderr().lock(),
    );
    if let Err(e) = &result {
        eprintln!("error: {e:#}");
    }
    ExitCode::from(exit_code(&result))
}
