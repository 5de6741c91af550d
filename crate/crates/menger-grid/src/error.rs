use std::path::PathBuf;

/// Crate-wide error type.
///
/// The variants mirror the process exit codes of the CLI: validation and
/// domain failures exit with 3, capacity failures with 4, I/O with 5.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// An argument is outside the operation's domain (bad range, dimension
    /// mismatch, unknown node id).
    #[error("{0}")]
    Domain(String),

    /// Structured input failed validation (disconnected graph, ragged
    /// dataset, malformed model file).
    #[error("{0}")]
    Validation(String),

    /// A size budget would be exceeded (cell count, point count, embedding
    /// level escalation exhausted).
    #[error("{0}")]
    Capacity(String),

    /// Text input could not be parsed; `line` is 1-based.
    #[error("{path}: line {line}: {message}")]
    Parse {
        path: String,
        line: usize,
        message: String,
    },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn validation(msg: impl Into<String>) -> Self {
        Error::Validation(msg.into())
    }

    pub fn capacity(msg: impl Into<String>) -> Self {
        Error::Capacity(msg.into())
    }

    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// Process exit code for the CLI: 3 validation, 4 capacity, 5 I/O.
    /// (Usage errors exit with 2 via the argument parser.)
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Domain(_) | Error::Validation(_) | Error::Parse { .. } => 3,
            Error::Capacity(_) => 4,
            Error::Io { .. } => 5,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
