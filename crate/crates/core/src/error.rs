use thiserror::Error;

/// Errors produced by the toolkit.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("invalid scene: {0}")]
    InvalidScene(String),

    /// Imaging was requested before a truncation rank was chosen.
    #[error("signal-space rank has not been selected")]
    RankNotSelected,

    #[error("SVD of {size}x{size} matrix did not converge within {max_iterations} iterations")]
    SvdNonConvergence { size: usize, max_iterations: usize },

    #[error("malformed {kind} file at line {line}: {message}")]
    Format {
        kind: &'static str,
        line: usize,
        message: String,
    },

    #[error("grid geometry mismatch: {0}")]
    GeometryMismatch(String),

    #[error("cannot parse scene file: {0}")]
    SceneFile(#[from] toml::de::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn format(kind: &'static str, line: usize, message: impl Into<String>) -> Self {
        Error::Format {
            kind,
            line,
            message: message.into(),
        }
    }
}
