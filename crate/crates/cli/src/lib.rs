//! Batch experiment harness for `modlearn`.
//!
//! One invocation runs one command (`learn`, `lowerbound`, `pac` or
//! `table`) and writes a JSON or CSV report to standard output or `--out`.
//! Exit status is 0 on success, 1 when a bound is violated or learning
//! fails, and 2 for configuration errors.

mod commands;
mod table;

use std::ffi::OsString;
use std::fmt;

use clap::{Parser, ValueEnum};

pub use table::{emit_table, ComplexityRow, Direction};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Command {
    Learn,
    Lowerbound,
    Pac,
    Table,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Construction {
    Prefix,
    Singleton,
    Positive,
}

/// Everything one run needs.
#[derive(Clone, Debug, Parser)]
#[command(name = "modlearn", about = "Query-learning experiments on product and union classes")]
pub struct ExperimentConfig {
    #[arg(value_enum)]
    pub command: Command,
    /// Class in canonical form, e.g. `prod(intervals(16),intervals(16))`.
    #[arg(long)]
    pub class: Option<String>,
    /// Target concept in canonical form, e.g. `prod([3,5],[2,8])`.
    #[arg(long)]
    pub target: Option<String>,
    /// learn: sup, mem, mem+pos, sub+mem+pos, eq+mem+pos, eq, sub, pos.
    /// pac: ex or mem.
    #[arg(long)]
    pub mode: Option<String>,
    #[arg(long, value_enum)]
    pub construction: Option<Construction>,
    #[arg(long, default_value_t = 2)]
    pub k: usize,
    #[arg(long, default_value_t = 2)]
    pub r: usize,
    /// Singleton range for `lowerbound`, grid side for `pac`.
    #[arg(long)]
    pub m: Option<u32>,
    #[arg(long, default_value_t = 0.2)]
    pub epsilon: f64,
    #[arg(long, default_value_t = 0.2)]
    pub delta: f64,
    #[arg(long, default_value_t = 4.0)]
    pub b: f64,
    /// Overridden by `MODLEARN_SEED` when set.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 1_000_000)]
    pub budget: u64,
    #[arg(long)]
    pub trials: Option<usize>,
    /// Defaults to csv for `table` and `pac`, json otherwise.
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    #[arg(long)]
    pub out: Option<std::path::PathBuf>,
}

impl ExperimentConfig {
    pub fn format(&self) -> Format {
        self.format.unwrap_or(match self.command {
            Command::Table | Command::Pac => Format::Csv,
            _ => Format::Json,
        })
    }
}

#[derive(Debug)]
pub enum CliError {
    Config(String),
    Failure(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Config(m) => write!(f, "configuration error: {m}"),
            CliError::Failure(m) => write!(f, "failure: {m}"),
        }
    }
}

impl From<modlearn::Error> for CliError {
    fn from(e: modlearn::Error) -> Self {
        use modlearn::Error as E;
        match e {
            E::Parse(_) | E::Domain(_) | E::UnsupportedQuery(_) | E::UniverseMismatch(_) => {
                CliError::Config(e.to_string())
            }
            e => CliError::Failure(e.to_string()),
        }
    }
}

/// A finished command: the report text and whether every check passed.
pub struct Report {
    pub text: String,
    pub pass: bool,
}

/// Parses `argv` (program name first), runs the command and returns the
/// exit status.
pub fn run_cli<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let mut config = match ExperimentConfig::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    if let Ok(s) = std::env::var("MODLEARN_SEED") {
        match s.trim().parse() {
            Ok(seed) => config.seed = seed,
            Err(_) => {
                eprintln!("configuration error: MODLEARN_SEED={s:?} is not an unsigned integer");
                return 2;
            }
        }
    }
    match run(&config) {
        Ok(report) => {
            if let Err(e) = write_out(&config, &report.text) {
                eprintln!("{e}");
                return 2;
            }
            i32::from(!report.pass)
        }
        Err(e) => {
            eprintln!("{e}");
            match e {
                CliError::Config(_) => 2,
                CliError::Failure(_) => 1,
            }
        }
    }
}

pub fn run(config: &ExperimentConfig) -> Result<Report, CliError> {
    match config.command {
        Command::Learn => commands::learn(config),
        Command::Lowerbound => commands::lowerbound(config),
        Command::Pac => commands::pac(config),
        Command::Table => table::table(config),
    }
}

fn write_out(config: &ExperimentConfig, text: &str) -> Result<(), CliError> {
    match &config.out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::Config(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

pub(crate) fn csv_text(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for r in rows {
        w.write_record(r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv is utf-8")
}
