//! `specgrad`: run, benchmark and verify specular gradient methods.
//!
//! Exit codes: 0 ok, 1 usage or configuration error, 2 the iterate escaped the
//! domain, 3 a verification check failed.

mod cli;
mod commands;
mod output;

use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

use cli::{Cli, Command};
use commands::EXIT_USAGE;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(EXIT_USAGE),
            };
        }
    };
    let result = match &cli.command {
        Command::Run(args) => commands::run(args),
        Command::Bench(args) => commands::bench_cmd(args),
        Command::Verify(args) => commands::verify(args),
        Command::List => commands::list(),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}
