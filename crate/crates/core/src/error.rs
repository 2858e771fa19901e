use crate::relations::FerrersWitness;

/// Crate-wide error type.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("element lists do not match: {0}")]
    MismatchedElements(String),
    #[error("unknown label `{0}`")]
    UnknownLabel(String),
    #[error("duplicate label `{0}`")]
    DuplicateLabel(String),
    #[error("empty element list")]
    EmptyElementList,
    #[error("{0} elements exceed the supported maximum of 64")]
    TooManyElements(usize),
    #[error("relation is not a total preorder ({0})")]
    NotTotalPreorder(String),
    #[error("relation is not an interval order{}", match .witness {
        Some(w) => format!(" (Ferrers fails at {w})"),
        None => " (not reflexive)".to_string(),
    })]
    NotIntervalOrder { witness: Option<FerrersWitness> },
    #[error("invalid topology: {0}")]
    InvalidTopology(String),
    #[error("empty list of function pairs")]
    EmptyPairList,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Error {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}
