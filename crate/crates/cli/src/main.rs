//! `resgt`: command-line front end.
//!
//! Exit codes: 0 success, 1 a checked property fails, 2 usage or input error.

mod args;
mod commands;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Construct(a) => commands::construct(a),
        Command::Verify(a) => commands::verify(a),
        Command::Encode(a) => commands::encode(a),
        Command::Decode(a) => commands::decode(a),
        Command::Simulate(a) => commands::simulate(a),
        Command::Info(a) => commands::info(a),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("resgt: {e}");
            e.exit_code()
        }
    }
}
