use std::io;

use thiserror::Error;

/// Failures of a CLI run, each mapped to an exit code.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("malformed data file: {0}")]
    Data(String),
    #[error(transparent)]
    Numeric(#[from] bernlike_core::Error),
    #[error("io: {0}")]
    Io(#[from] io::Error),
}

impl CliError {
    /// 2 for usage and input-format errors, 1 for numeric faults.
    pub fn exit_code(&self) -> u8 {
        match self {
            Self::Usage(_) | Self::Data(_) => 2,
            Self::Numeric(_) | Self::Io(_) => 1,
        }
    }
}
