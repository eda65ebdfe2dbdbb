use thiserror::Error;

/// Errors raised by the geometry, algebra and resolution routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero vector has no primitive direction")]
    ZeroVector,
    #[error("empty generator set")]
    EmptyIdeal,
    #[error("zero ideal")]
    ZeroIdeal,
    #[error("ambient mismatch: {0}")]
    AmbientMismatch(String),
    #[error("substitution leaves variable `{0}` undefined")]
    IncompleteSubstitution(String),
    #[error("coefficient ideal needs a finite positive order, got {0}")]
    BadOrder(String),
    #[error("no maximal contact element can be rectified by a triangular substitution")]
    NoRectifiableContact,
    #[error("center has neither ordinary part nor monomial part")]
    EmptyCenter,
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("invariant did not drop: parent {parent}, child {child} on chart {chart}")]
    InvariantNotDropped {
        parent: String,
        child: String,
        chart: String,
    },
    #[error("resolution exceeded depth limit {0}")]
    DepthExceeded(usize),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("computation limit: {0}")]
    ComputationLimit(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
}

impl Error {
    /// Stable machine-readable code.
    pub fn code(&self) -> &'static str {
        match self {
            Error::ZeroVector => "ZeroVector",
            Error::EmptyIdeal => "EmptyIdeal",
            Error::ZeroIdeal => "ZeroIdeal",
            Error::AmbientMismatch(_) => "AmbientMismatch",
            Error::IncompleteSubstitution(_) => "IncompleteSubstitution",
            Error::BadOrder(_) => "BadOrder",
            Error::NoRectifiableContact => "NoRectifiableContact",
            Error::EmptyCenter => "EmptyCenter",
            Error::HypothesisViolated(_) => "HypothesisViolated",
            Error::InvariantNotDropped { .. } => "InvariantNotDropped",
            Error::DepthExceeded(_) => "DepthExceeded",
            Error::Precondition(_) => "Precondition",
            Error::ComputationLimit(_) => "ComputationLimit",
            Error::Parse { .. } => "Parse",
            Error::UnknownVariable(_) => "UnknownVariable",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
