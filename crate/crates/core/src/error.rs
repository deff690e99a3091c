use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("{what} size {requested} exceeds the enumeration cutoff {cutoff}")]
    AboveCutoff {
        what: &'static str,
        requested: usize,
        cutoff: usize,
    },

    /// A value that must be rational (a sum over all roots of unity) kept
    /// an irrational part.
    #[error("expected a rational value, found non-constant part in {0}")]
    NotRational(String),

    /// An exact division that must come out integral did not.
    #[error("expected an integer, found {0}")]
    NotInteger(String),

    #[error("unknown identity `{0}`")]
    UnknownIdentity(String),

    #[error("point {point} violates the constraints of `{id}`: {detail}")]
    ConstraintViolation {
        id: String,
        point: String,
        detail: String,
    },

    #[error("outside the domain of {map}: {detail}")]
    Domain { map: &'static str, detail: String },

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}
