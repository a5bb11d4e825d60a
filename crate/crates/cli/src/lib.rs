//! Command-line front end for `prodnorm-core`: argument parsing, CSV / JSON /
//! binary encodings, atomic output files and threaded batch runs.

pub mod args;
pub mod commands;
pub mod config;
pub mod error;
pub mod output;
pub mod workers;

use args::Cli;
use error::CliResult;

/// The JSON schema every `--format json` document validates against.
pub const OUTPUT_SCHEMA: &str = include_str!("../schema/output.schema.json");

pub fn execute(cli: &Cli) -> CliResult<()> {
    let artifact = commands::run(&cli.command)?;
    let out = cli.command.output();
    let bytes = artifact.encode(out.format)?;
    output::write_output(out.out.as_deref(), &bytes)
}
