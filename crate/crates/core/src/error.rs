use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("degenerate direction: points {0} and {1} coincide")]
    DegenerateDirection(usize, usize),

    #[error("cone count must be at least 3, got {0}")]
    InvalidConeCount(usize),

    #[error("cone count {0} is not a multiple of 6")]
    NotHexagonalMultiple(usize),

    #[error("angle {0} outside of [0, pi/3]")]
    AngleOutOfRange(f64),

    #[error("duplicate coordinates for point ids {0:?}")]
    DuplicatePoints(Vec<usize>),

    #[error("point ids must be 0..n-1 in order; found id {found} at position {position}")]
    NonContiguousIds { position: usize, found: usize },

    #[error("unknown point id {0}")]
    UnknownPoint(usize),

    #[error("expected at least {needed} points, got {got}")]
    TooFewPoints { needed: usize, got: usize },

    #[error("operation requires a {expected} graph, got {got}")]
    WrongGraphKind { expected: &'static str, got: String },

    #[error("graphs are built on different point sets")]
    MismatchedPointSets,

    #[error("all-pairs oracle limited to {limit} points, got {got}")]
    OracleTooLarge { limit: usize, got: usize },

    #[error("induction violated while expanding edge {source_id}->{target_id}: {reason}")]
    InductionViolated {
        source_id: usize,
        target_id: usize,
        reason: String,
    },

    #[error("invalid point-set spec: {0}")]
    InvalidSpec(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("io error: {0}")]
    Io(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
