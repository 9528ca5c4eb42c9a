use thiserror::Error;

/// Errors raised by the library.
///
/// The variants partition failures the way callers need to react to them:
/// malformed input, a degenerate graph product, a breached resource cap.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),

    #[error("invalid input: {0}")]
    Input(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("degenerate graph product: {0}")]
    Degenerate(String),

    #[error("resource cap exceeded: {what} (cap {cap})")]
    Resource { what: String, cap: usize },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }
}
