//! Command-line front end for `tfd-core`.

pub mod args;
pub mod commands;
pub mod config;
pub mod error;
pub mod output;

pub use args::{Cli, Command};
pub use error::{CliError, CliResult};

use config::{ConfigFile, RunConfig};

/// Merges the configuration layers and dispatches the subcommand.
pub fn run(cli: Cli) -> CliResult<()> {
    let file = match &cli.global.config {
        Some(path) => ConfigFile::load(path)?,
        None => ConfigFile::default(),
    };
    let cfg = RunConfig::resolve(file.overlay(cli.global.as_config()), cli.command.default_out())?;
    match &cli.command {
        Command::Fig1(a) => commands::figures::fig1(a, &cfg),
        Command::Fig2(a) => commands::figures::fig2(a, &cfg),
        Command::Fig3(a) => commands::figures::fig3(a, &cfg),
        Command::Converge(a) => commands::converge::run(a, &cfg),
        Command::Verify(a) => commands::verify::run(a, &cfg),
        Command::Opo(a) => commands::opo::run(a, &cfg),
    }
}
