//! The `lebesgue-lab` command-line tool as a library, so tests can drive it
//! without spawning processes.

pub mod args;
mod commands;
mod output;
pub mod specs;

use std::fs;
use std::io::Write;

use thiserror::Error;

pub use args::{Cli, Command, Format, Options};

/// JSON schema tag written into every JSON document.
pub const SCHEMA: &str = "lebesgue-lab/1";

/// Identity of the random generator behind `--seed`.
pub const GENERATOR: &str = "ChaCha8Rng (rand_chacha 0.3, seed_from_u64)";

#[derive(Debug, Error)]
pub enum CliError {
    /// Bad arguments or input files; exit code 2.
    #[error("{0}")]
    Input(String),
    /// A computation broke down; exit code 3.
    #[error("numerical failure: {0}")]
    Numerical(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::Numerical(_) => 3,
        }
    }
}

impl From<lebesgue_lab::Error> for CliError {
    fn from(e: lebesgue_lab::Error) -> Self {
        match e {
            lebesgue_lab::Error::Numerical(m) => CliError::Numerical(m),
            other => CliError::Input(other.to_string()),
        }
    }
}

/// Runs one subcommand and returns the rendered document.
pub fn render(command: &Command) -> Result<Vec<u8>, CliError> {
    match command {
        Command::Growth(o) => commands::growth(o),
        Command::Converge(o) => commands::converge(o),
        Command::FaberCheck(o) => commands::faber_check(o),
        Command::Porosity(o) => commands::porosity(o),
        Command::Oracle(o) => commands::oracle(o),
    }
}

fn options(command: &Command) -> &Options {
    match command {
        Command::Growth(o)
        | Command::Converge(o)
        | Command::FaberCheck(o)
        | Command::Porosity(o)
        | Command::Oracle(o) => o,
    }
}

/// Runs a parsed command line, writing to `--out` or standard output.
pub fn run(cli: &Cli) -> Result<(), CliError> {
    let bytes = render(&cli.command)?;
    match &options(&cli.command).out {
        Some(path) => fs::write(path, &bytes)
            .map_err(|e| CliError::Input(format!("{}: cannot write: {e}", path.display()))),
        None => std::io::stdout()
            .write_all(&bytes)
            .map_err(|e| CliError::Input(format!("cannot write to stdout: {e}"))),
    }
}
