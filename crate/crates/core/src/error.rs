use thiserror::Error;

/// Everything that can go wrong while building curves, computing invariants
/// or checking bounds.
#[derive(Debug, Error)]
pub enum Error {
    #[error("curve needs at least 3 vertices, got {0}")]
    TooFewVertices(usize),

    #[error("vertex {index} has a non-finite coordinate")]
    NonFinite { index: usize },

    #[error("edge {index} has zero length")]
    ZeroLengthEdge { index: usize },

    #[error("closed curve repeats its first vertex at the end")]
    DuplicateClosingVertex,

    #[error("vertex index {index} out of range for curve with {len} vertices")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("segments {first} and {second} intersect (distance {distance:e})")]
    SelfIntersection {
        first: usize,
        second: usize,
        distance: f64,
    },

    #[error("unsupported input: {0}")]
    Unsupported(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("projection stayed degenerate after {retries} perturbations")]
    PersistentDegeneracy { retries: usize },

    #[error("JSON error at line {line}, column {column}: {message}")]
    Json {
        line: usize,
        column: usize,
        message: String,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl From<serde_json::Error> for Error {
    fn from(err: serde_json::Error) -> Self {
        Error::Json {
            line: err.line(),
            column: err.column(),
            message: err.to_string(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
