use thiserror::Error;

/// Process exit statuses.
pub mod exit {
    pub const OK: u8 = 0;
    pub const IO: u8 = 1;
    pub const CONFIG: u8 = 2;
    pub const VALIDATION: u8 = 3;
    pub const INCONCLUSIVE: u8 = 4;
    pub const VIOLATION: u8 = 5;
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("validation error: {0}")]
    Validation(String),
    #[error("{0}")]
    EmptySuite(String),
    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("internal error: {0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            Self::Config(_) | Self::EmptySuite(_) => exit::CONFIG,
            Self::Validation(_) => exit::VALIDATION,
            Self::Io { .. } => exit::IO,
            Self::Internal(_) => exit::VIOLATION,
        }
    }
}
