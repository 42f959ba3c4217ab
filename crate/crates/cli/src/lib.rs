//! Command-line surface over `vrsp-core`: decision-region export, risk
//! grids, domination verification, Bayes evaluation, and admissibility
//! scans. Every command emits CSV with its full configuration echoed in
//! leading `#` comment lines, so any output file is reproducible from its
//! own header.

// Range guards are written as negated comparisons (`!(x > 0.0)`) so that
// NaN fails them.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod args;
pub mod commands;
pub mod grid;
pub mod output;
pub mod prior_file;

use std::fmt;

/// Errors carrying the exit-code contract: 2 for usage/config, 3 for
/// numerical failure.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Numerical(String),
    Io(std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Io(_) => 2,
            CliError::Numerical(_) => 3,
        }
    }

    pub fn usage(msg: impl Into<String>) -> Self {
        CliError::Usage(msg.into())
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "{m}"),
            CliError::Numerical(m) => write!(f, "numerical failure: {m}"),
            CliError::Io(e) => write!(f, "io error: {e}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

/// Dispatch a parsed command line.
pub fn run(cli: args::Cli) -> Result<(), CliError> {
    match cli.command {
        args::Command::Region(a) => commands::region::run(&a),
        args::Command::Risk(a) => commands::risk::run(&a),
        args::Command::Dominate(a) => commands::dominate::run(&a),
        args::Command::Bayes(a) => commands::bayes::run(&a),
        args::Command::Admcheck(a) => commands::admcheck::run(&a),
    }
}
