//! Command-line front end for `xbounds-core`.
//!
//! Exit codes: 0 success, 1 usage or input error, 2 verification failure.

pub mod args;
pub mod commands;
pub mod number;

use std::fs;
use std::io::{self, Write};

use anyhow::{Context, Result};

pub use args::Cli;
use args::Command;
use commands::Output;

pub const EXIT_SUCCESS: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_VERIFICATION: i32 = 2;

/// Runs the command to completion in memory. Nothing is written on error.
pub fn render(cli: &Cli) -> Result<Output> {
    match &cli.command {
        Command::Eval(a) => commands::eval(a),
        Command::Sweep(a) => commands::sweep(a),
        Command::Curve(a) => commands::curve(a),
        Command::Thresholds(a) => commands::thresholds(a),
        Command::Delta(a) => commands::delta(a),
        Command::Verify(a) => commands::verify(a),
    }
}

/// Renders and writes to the output target; returns the process exit code.
pub fn run(cli: &Cli) -> i32 {
    let result = render(cli).and_then(|out| {
        match &cli.output {
            Some(path) => fs::write(path, &out.bytes)
                .with_context(|| format!("writing {}", path.display()))?,
            None => {
                let mut stdout = io::stdout().lock();
                stdout.write_all(&out.bytes)?;
                stdout.flush()?;
            }
        }
        Ok(out.passed)
    });
    match result {
        Ok(true) => EXIT_SUCCESS,
        Ok(false) => EXIT_VERIFICATION,
        Err(e) => {
            eprintln!("error: {e:#}");
            EXIT_USAGE
        }
    }
}
