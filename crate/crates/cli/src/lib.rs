//! Command-line front end for `ripp_core`: argument parsing, the JSON
//! problem document, report formats and the subcommands behind the
//! `ripp` binary.

// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod commands;
pub mod doc;
pub mod error;
pub mod report;

use cli::{Cli, Command};
use error::CliResult;

pub fn run(cli: &Cli) -> CliResult<()> {
    match &cli.command {
        Command::Evaluate(a) => commands::evaluate(a),
        Command::Curve(a) => commands::curve(a),
        Command::Reversal(a) => commands::reversal(a),
        Command::WealthThreshold(a) => commands::wealth_threshold(a),
        Command::Simulate(a) => commands::simulate(a),
    }
}
