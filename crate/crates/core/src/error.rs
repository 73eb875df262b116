use thiserror::Error;

/// A syntax error in one of the text formats, pinned to a 1-based line and column.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(line: usize, column: usize, message: impl Into<String>) -> Self {
        Self {
            line,
            column,
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at {0}")]
    Parse(#[from] ParseError),
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("invalid scalar `{text}` for field {field}")]
    InvalidScalar { text: String, field: String },
    #[error("invalid quiver: {0}")]
    InvalidQuiver(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("quiver or field mismatch: {0}")]
    Mismatch(String),
    #[error("quiver is of infinite representation type: {0}")]
    InfiniteType(String),
    #[error("{dims:?} is not a positive root (q = {q})")]
    NotARoot { dims: Vec<usize>, q: i64 },
    #[error("vertex {0} is not a sink")]
    NotASink(usize),
    #[error("vertex {0} is not a source")]
    NotASource(usize),
    #[error("vertex {0} carries a loop")]
    LoopAtVertex(usize),
    #[error("the zero representation is not allowed here")]
    ZeroRepresentation,
    #[error("no Schur representation found after {attempts} random attempts")]
    RetryCapExceeded { attempts: usize },
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    /// Process exit code used by the command-line tool.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse(_)
            | Error::Io { .. }
            | Error::InvalidArgument(_)
            | Error::InvalidField(_)
            | Error::InvalidScalar { .. }
            | Error::InvalidQuiver(_)
            | Error::ZeroRepresentation => 1,
            Error::InfiniteType(_) => 2,
            Error::NotARoot { .. } => 3,
            Error::ShapeMismatch(_) | Error::Mismatch(_) => 4,
            Error::NotASink(_)
            | Error::NotASource(_)
            | Error::LoopAtVertex(_)
            | Error::RetryCapExceeded { .. }
            | Error::Internal(_) => 5,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
