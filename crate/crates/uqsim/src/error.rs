use std::fmt;
use std::path::PathBuf;

use uqsim_core::Error as CoreError;

/// Position of a text-format error, 1-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(line: usize, column: usize, message: impl Into<String>) -> Self {
        ParseError { line, column, message: message.into() }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Parse { path: PathBuf, source: ParseError },
    #[error("{0}")]
    Core(#[from] CoreError),
    #[error("refusing to run: {0}")]
    Policy(String),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{0}")]
    Output(String),
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INFEASIBLE: i32 = 2;
pub const EXIT_POLICY: i32 = 3;
pub const EXIT_NUMERIC: i32 = 4;

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Parse { .. } | CliError::Io { .. } | CliError::Output(_) => EXIT_USAGE,
            CliError::Policy(_) => EXIT_POLICY,
            CliError::Core(e) => match e {
                CoreError::Infeasible { .. }
                | CoreError::Asymmetric(_)
                | CoreError::NotDiagonal
                | CoreError::Hardware(_)
                | CoreError::ManyBodyTerm(_)
                | CoreError::UnavailableShift(_)
                | CoreError::NotTwoDimensional
                | CoreError::TooFewIons
                | CoreError::OverlappingGroups(_) => EXIT_INFEASIBLE,
                CoreError::MissingSeed => EXIT_POLICY,
                CoreError::NormDrift(_)
                | CoreError::NonUnitary { .. }
                | CoreError::IllConditioned { .. }
                | CoreError::Gapless(_)
                | CoreError::CapExceeded { .. } => EXIT_NUMERIC,
                _ => EXIT_USAGE,
            },
        }
    }

    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io { path: path.into(), source }
    }
}

pub type CliResult<T> = Result<T, CliError>;
