//! Library side of the `gibbs` binary: argument definitions, value parsers
//! and output rendering.

pub mod args;
pub mod commands;
pub mod error;
pub mod inputs;
pub mod output;

use clap::Parser;

pub use args::Cli;
pub use error::CliError;
pub use output::{Format, Record, Value};

/// Rendered output of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rendered {
    pub stdout: String,
    /// Warnings that have no place in the chosen format (CSV) and go to stderr.
    pub stderr: Vec<String>,
}

/// Run the parsed command and render it.
pub fn execute(cli: Cli) -> Result<Rendered, CliError> {
    let format = cli.format;
    let record = commands::run(cli.command)?;
    let stderr = match format {
        Format::Csv => record.warnings().to_vec(),
        _ => Vec::new(),
    };
    Ok(Rendered {
        stdout: record.render(format)?,
        stderr,
    })
}

/// Convenience for tests: parse and run without touching the process.
pub fn run_args<I, T>(argv: I) -> Result<String, String>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = Cli::try_parse_from(argv).map_err(|e| e.to_string())?;
    execute(cli).map(|r| r.stdout).map_err(|e| e.to_string())
}
