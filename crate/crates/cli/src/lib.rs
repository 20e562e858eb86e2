//! Command-line front end: argument parsing, command dispatch and output in
//! text, JSON or LaTeX.

pub mod input;
pub mod report;

use clap::{Parser, ValueEnum};
use thiserror::Error;

pub use input::{parse_input, Hint, Input};
pub use report::{emit, poly_from_json, poly_to_json, run, Report};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Command {
    /// Positive and even expansions, sign and type sequences.
    Convert,
    /// The snake graph and its number of perfect matchings.
    Snake,
    /// The specialized (or, with --full, the full) F-polynomial.
    Fpoly,
    /// The Jones polynomial.
    Jones,
    /// Cross-check the engines on every expansion up to --max-sum.
    Verify,
    /// Hyperbolic volume bounds.
    Volume,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EngineChoice {
    Recursive,
    Direct,
    Fpoly,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Latex,
}

/// Jones polynomials of 2-bridge links from continued fractions.
#[derive(Debug, Clone, Parser)]
#[command(name = "snakejones", version)]
pub struct Request {
    #[arg(value_enum)]
    pub command: Command,
    /// A fraction `p/q`, or a continued fraction `[c1,c2,...]`.
    #[arg(allow_hyphen_values = true)]
    pub input: Option<String>,
    #[arg(long, value_enum, default_value_t = EngineChoice::Recursive)]
    pub engine: EngineChoice,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Read an all-even entry list as an even continued fraction.
    #[arg(long, conflicts_with = "positive")]
    pub even: bool,
    /// Read an entry list as a positive continued fraction.
    #[arg(long)]
    pub positive: bool,
    /// Bound on the absolute entry sum for `verify`.
    #[arg(long, default_value_t = 10)]
    pub max_sum: usize,
    /// Full multivariate F-polynomial for `fpoly`.
    #[arg(long)]
    pub full: bool,
}

impl Request {
    pub fn hint(&self) -> Option<Hint> {
        match (self.even, self.positive) {
            (true, _) => Some(Hint::Even),
            (_, true) => Some(Hint::Positive),
            _ => None,
        }
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] snakejones::Error),
    #[error("{0}")]
    Usage(String),
    #[error("engines disagree on {input}: {detail}")]
    CrossCheckMismatch { input: String, detail: String },
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        use snakejones::Error as E;
        match self {
            CliError::Usage(_) => 1,
            CliError::Core(E::Parse { .. } | E::InvalidEntry { .. } | E::EmptyCf | E::ZeroTail) => 1,
            CliError::Core(_) => 2,
            CliError::CrossCheckMismatch { .. } => 3,
        }
    }
}
