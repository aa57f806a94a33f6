//! Command-line front end for `linkhom-core`: expression parsing, JSON
//! formats and the budgeted graph search driver.

pub mod commands;
pub mod element;
pub mod parse;
pub mod search;

use std::fmt;

/// Failure classes, each with its own exit code.
#[derive(Debug)]
pub enum CliError {
    /// Malformed input. Exit code 2.
    Parse(String),
    /// Well-formed input the computation rejects. Exit code 1.
    Domain(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Domain(_) => 1,
            CliError::Parse(_) => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Parse(m) => write!(f, "parse error: {}", m),
            CliError::Domain(m) => write!(f, "error: {}", m),
        }
    }
}

impl std::error::Error for CliError {}

impl From<parse::ParseError> for CliError {
    fn from(e: parse::ParseError) -> Self {
        CliError::Parse(e.to_string())
    }
}

impl From<linkhom_core::Error> for CliError {
    fn from(e: linkhom_core::Error) -> Self {
        CliError::Domain(e.to_string())
    }
}

/// Text to print and the exit code to finish with.
#[derive(Debug)]
pub struct Output {
    pub text: String,
    pub code: i32,
}

impl Output {
    pub fn ok(text: impl Into<String>) -> Self {
        Output {
            text: text.into(),
            code: 0,
        }
    }
}

/// Exit code for a search that ran out of budget.
pub const EXIT_BUDGET: i32 = 3;
