mod args;
mod commands;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};
use commands::CliError;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Table(a) => commands::table(a),
        Command::Sample(a) => commands::sample(a),
        Command::Ep(a) => commands::ep(a),
        Command::Ar1(a) => commands::ar1(a),
        Command::Verify(a) => commands::verify_cmd(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Failed(msg)) => {
            eprintln!("maxid: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("maxid: {msg}");
            ExitCode::from(2)
        }
    }
}
