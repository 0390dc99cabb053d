use thiserror::Error;

/// Errors surfaced by the pattern calculus and its file formats.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed pattern `{text}`: {reason}")]
    MalformedPattern { text: String, reason: String },

    #[error("pattern `{text}` declares {size} vertices: expected {expected} bits, found {found}")]
    BitCount {
        text: String,
        size: usize,
        expected: usize,
        found: usize,
    },

    #[error("pattern size must be at least 1")]
    EmptyPattern,

    #[error("operation needs a pattern of size at least {needed}, got {actual}")]
    PatternTooSmall { needed: usize, actual: usize },

    #[error("vertex {vertex} is outside [0, {bound})")]
    VertexOutOfRange { vertex: usize, bound: usize },

    #[error("vertex {0} listed more than once")]
    DuplicateVertex(usize),

    #[error("vertex list must be strictly increasing (saw {previous} before {next})")]
    UnorderedVertices { previous: usize, next: usize },

    #[error("vertex list must be nonempty")]
    EmptyVertexList,

    #[error("arity mismatch: set has {set_size} elements, pattern needs {needed}")]
    Arity { set_size: usize, needed: usize },

    #[error("partial coloring is undefined on vertex {0}")]
    WitnessUndefined(usize),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("resource guard exceeded: {0}")]
    Guard(String),

    #[error("window exhausted: {0}")]
    WindowExhausted(String),

    #[error("parse error on line {line}: {reason}")]
    Parse { line: usize, reason: String },

    #[error("unknown check `{0}`")]
    UnknownCheck(String),

    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
