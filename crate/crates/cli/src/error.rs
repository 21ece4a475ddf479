use std::path::PathBuf;

use ptxform_core::Error as CoreError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),
    #[error(transparent)]
    Numerical(#[from] CoreError),
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{}: {message}", path.display())]
    Format { path: PathBuf, message: String },
}

pub type Result<T> = std::result::Result<T, CliError>;

pub const EXIT_CONFIG: u8 = 2;
pub const EXIT_NUMERICAL: u8 = 3;
pub const EXIT_IO: u8 = 4;

impl CliError {
    pub fn config(msg: impl Into<String>) -> Self {
        CliError::Config(msg.into())
    }

    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io { path: path.into(), source }
    }

    /// Invalid parameters caught by the core count as configuration errors;
    /// everything else it raises is numerical.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) => EXIT_CONFIG,
            CliError::Numerical(e) if is_input_error(e) => EXIT_CONFIG,
            CliError::Numerical(_) => EXIT_NUMERICAL,
            CliError::Io { .. } | CliError::Format { .. } => EXIT_IO,
        }
    }
}

fn is_input_error(e: &CoreError) -> bool {
    matches!(
        e,
        CoreError::EvenNodeCount(_)
            | CoreError::TooFewNodes(_)
            | CoreError::NonPositiveExtent(_)
            | CoreError::DeltaOutsideGrid { .. }
            | CoreError::TabulatedLengthMismatch { .. }
            | CoreError::TabulatedNotMonotone
            | CoreError::InvalidTerm(_)
            | CoreError::InvalidTolerance(_)
            | CoreError::EmptyRange
            | CoreError::TooFewSites(_)
            | CoreError::ChainTooLarge(_)
            | CoreError::TruncationTooSmall(_)
            | CoreError::InvalidParameters(_)
            | CoreError::NonIntegrablePotential
    )
}
