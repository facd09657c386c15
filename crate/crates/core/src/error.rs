use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("I/O error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{0} already exists (use --force to overwrite)")]
    FileExists(PathBuf),

    #[error("{path}: malformed header at line {line}: {message}")]
    MalformedHeader {
        path: PathBuf,
        line: usize,
        message: String,
    },

    #[error("{path}: malformed record at line {line}: {message}")]
    MalformedRecord {
        path: PathBuf,
        line: usize,
        message: String,
    },

    #[error("{path}: header declares {expected} records but file holds {found}")]
    RecordCountMismatch {
        path: PathBuf,
        expected: usize,
        found: usize,
    },

    #[error("{path}: invariant violated at line {line}: {message}")]
    InvariantViolation {
        path: PathBuf,
        line: usize,
        message: String,
    },

    #[error("insufficient data: {0}")]
    InsufficientData(String),

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("no Binder crossing between L={small} and L={large} in [{t_min}, {t_max}]")]
    NoCrossing {
        small: usize,
        large: usize,
        t_min: f64,
        t_max: f64,
    },

    #[error(
        "ambiguous Binder crossing between L={small} and L={large}: roots at {roots:?}; narrow the temperature window"
    )]
    AmbiguousCrossing {
        small: usize,
        large: usize,
        roots: Vec<f64>,
    },

    #[error("config line {line}: {message}")]
    Config { line: usize, message: String },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
