//! `icanon`: tables of Kazhdan-Lusztig polynomials, canonical and
//! ι-canonical bases, and positivity reports.
//!
//! Exit codes: 0 success, 1 negative coefficient found, 2 invalid
//! configuration, 3 internal invariant violation.

mod args;
mod cache;
mod run;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use args::Cli;
use run::{execute, CliError, Outcome};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match drive(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn drive(cli: &Cli) -> Result<u8, CliError> {
    let store = if cli.common.no_cache { None } else { cli.common.cache_dir.as_deref().map(cache::Cache::new) };
    let key = cache::key(&cli.command, &cli.common);
    let outcome = match store.as_ref().and_then(|c| c.load(&key)) {
        Some(hit) => hit,
        None => {
            let fresh = execute(&cli.command, &cli.common)?;
            if let Some(c) = &store {
                c.store(&key, &fresh)?;
            }
            fresh
        }
    };
    emit(cli, &outcome)?;
    if let Some(f) = &outcome.failures {
        eprintln!("negative coefficients:\n{f}");
    }
    Ok(match outcome.positive {
        Some(false) => 1,
        _ => 0,
    })
}

fn emit(cli: &Cli, outcome: &Outcome) -> Result<(), CliError> {
    match &cli.common.output {
        Some(path) => std::fs::write(path, &outcome.bytes)?,
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(&outcome.bytes)?;
            out.flush()?;
        }
    }
    Ok(())
}
