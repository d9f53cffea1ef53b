use std::process::ExitCode;

use clap::Parser;
use ripp_cli::cli::Cli;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match ripp_cli::run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
