use std::process::ExitCode;

use clap::Parser;
use xbounds_cli::{run, Cli, EXIT_SUCCESS, EXIT_USAGE};

fn main() -> ExitCode {
    let code = match Cli::try_parse() {
        Ok(cli) => run(&cli),
        Err(e) => {
            let _ = e.print();
            if e.use_stderr() {
                EXIT_USAGE
            } else {
                EXIT_SUCCESS
            }
        }
    };
    ExitCode::from(code as u8)
}
