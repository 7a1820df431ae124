//! Command-line front end: regenerate the tables and the quadruple list,
//! and analyze individual forms.

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

pub mod analyze;
pub mod enumerate;
pub mod golden;
pub mod tables;

/// Success, or every golden value matched.
pub const EXIT_OK: i32 = 0;
/// A computed value differs from the golden file.
pub const EXIT_MISMATCH: i32 = 1;
/// Unreadable or invalid input.
pub const EXIT_INPUT: i32 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Parser)]
#[command(name = "foliage", version, about = "Exact computations on degree-three foliations of P^3")]
pub struct Cli {
    /// Seed for every sampled member.
    #[arg(long, global = true, default_value_t = 42)]
    pub seed: u64,
    /// Samples per generic value; the minimum is reported.
    #[arg(long, global = true, default_value_t = 3, value_parser = clap::value_parser!(u64).range(1..))]
    pub trials: u64,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    pub output: OutputFormat,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build the component tables and compare them with the golden values.
    Tables {
        #[arg(long, default_value_t = 3)]
        degree: u32,
        /// Golden file to compare against instead of the bundled one.
        #[arg(long)]
        golden: Option<PathBuf>,
    },
    /// List the weight quadruples whose eigenspaces survive the filters.
    Enumerate {
        #[arg(long, default_value_t = 3)]
        degree: u32,
        /// Keep only quadruples with finitely many non-Kupka points.
        #[arg(long)]
        kupka: bool,
        /// Run the graded zero-dimensionality probe up to this weighted degree.
        #[arg(long)]
        probe_bound: Option<i64>,
        /// Golden file to compare against in degree three.
        #[arg(long)]
        golden: Option<PathBuf>,
    },
    /// Certificates for one twisted 1-form read from a JSON file.
    Analyze { file: PathBuf },
}

/// Settings shared by every command.
#[derive(Clone, Copy, Debug)]
pub struct CliConfig {
    pub seed: u64,
    pub trials: usize,
    pub output: OutputFormat,
}

/// Failure of a command, mapped to an exit code.
#[derive(Debug)]
pub enum CliError {
    Input(String),
    Io(std::io::Error),
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

impl From<foliage::Error> for CliError {
    fn from(e: foliage::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

/// Runs one parsed invocation and returns its exit code.
pub fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let config = CliConfig {
        seed: cli.seed,
        trials: cli.trials as usize,
        output: cli.output,
    };
    let result = match cli.command {
        Command::Tables { degree, golden } => tables::cmd_tables(&config, degree, golden.as_deref(), out, err),
        Command::Enumerate {
            degree,
            kupka,
            probe_bound,
            golden,
        } => enumerate::cmd_enumerate(&config, degree, kupka, probe_bound, golden.as_deref(), out, err),
        Command::Analyze { file } => analyze::cmd_analyze(&config, &file, out),
    };
    match result {
        Ok(code) => code,
        Err(CliError::Input(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_INPUT
        }
        Err(CliError::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_INPUT
        }
    }
}

/// Writes a serializable value as pretty JSON followed by a newline.
pub(crate) fn write_json<T: serde::Serialize>(out: &mut dyn Write, value: &T) -> CliResult<()> {
    serde_json::to_writer_pretty(&mut *out, value)?;
    writeln!(out)?;
    Ok(())
}

/// Reports the differences, if any, and picks the exit code.
pub(crate) fn finish(diffs: &[String], err: &mut dyn Write) -> CliResult<i32> {
    if diffs.is_empty() {
        return Ok(EXIT_OK);
    }
    writeln!(err, "{} value(s) differ from the golden file:", diffs.len())?;
    for d in diffs {
        writeln!(err, "  {d}")?;
    }
    Ok(EXIT_MISMATCH)
}
