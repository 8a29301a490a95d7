use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Malformed or inconsistent input.
    #[error("invalid input: {0}")]
    Input(String),

    /// A computation was refused because it would exceed a configured limit.
    #[error("resource limit: {0}")]
    Resource(String),

    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },

    /// A contraction map does not send an occurrence vector to its image.
    #[error("map does not fix the occurrence vector of party {party}: expected {expected}, found {found}")]
    MapInvalid {
        party: String,
        expected: String,
        found: String,
    },

    /// No AME representative is registered for this bulk degree.
    #[error("no AME tensor registered for bulk vertex `{vertex}` of degree {degree}")]
    Registry { vertex: String, degree: usize },

    #[error("internal error: {0}")]
    Internal(String),

    #[error("io error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub(crate) fn resource(msg: impl Into<String>) -> Self {
        Error::Resource(msg.into())
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Input(format!("json: {e}"))
    }
}
