use std::process::ExitCode;

use clap::Parser;
use qcghost_cli::cli::{Cli, Sub};
use qcghost_cli::commands::RunOptions;
use qcghost_cli::{diff_files, run_command, Command, CliError};

fn run(cli: Cli) -> Result<bool, CliError> {
    let (command, options) = match cli.command {
        Some(Sub::Diff { a, b, tolerance }) => {
            let d = diff_files(&a, &b)?;
            println!(
                "rows {}  max |dt| {:.3e}  max |dy| {:.6e}  max |dDy| {:.6e}",
                d.rows, d.max_time_offset, d.max_y, d.max_dy
            );
            return Ok(tolerance.map_or(true, |tol| d.max_dy <= tol));
        }
        Some(Sub::Simulate) => (Some(Command::Simulate), RunOptions::default()),
        Some(Sub::Spectral { times_from }) => (Some(Command::Spectral), RunOptions { times_from }),
        Some(Sub::Bounds) => (Some(Command::Bounds), RunOptions::default()),
        Some(Sub::Sweep) => (Some(Command::Sweep), RunOptions::default()),
        None => (None, RunOptions::default()),
    };
    let config = cli.common.resolve(command)?;
    let outcome = run_command(&config, &options)?;
    for m in &outcome.messages {
        println!("{m}");
    }
    for r in outcome.reports.iter().filter(|r| !r.passed) {
        eprintln!("{r}");
    }
    for f in &outcome.files {
        println!("wrote {}", f.display());
    }
    Ok(outcome.failed_reports() == 0)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
