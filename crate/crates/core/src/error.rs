use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// A field failed a range or consistency check. `field` is a dotted path
    /// such as `servers[3].down_threshold`.
    #[error("invalid {field}: {reason}")]
    Invalid { field: String, reason: String },

    #[error("resource underflow: cannot subtract {rhs} from {lhs}")]
    ResourceUnderflow { lhs: String, rhs: String },

    #[error("weight {0} is zero but appears in a reciprocal term")]
    ZeroWeight(&'static str),

    #[error("unknown server `{0}`")]
    UnknownServer(String),

    #[error("server `{0}` is not active")]
    InactiveServer(String),

    #[error("no requests observed; violation rate undefined")]
    NoRequests,

    #[error("no samples to bin")]
    EmptySamples,

    #[error("empty input: {0}")]
    EmptyInput(String),

    #[error("insufficient capacity: {0}")]
    InsufficientCapacity(String),

    #[error("failed to parse {path}: {message}")]
    Parse { path: PathBuf, message: String },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn invalid(field: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::Invalid {
            field: field.into(),
            reason: reason.into(),
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
