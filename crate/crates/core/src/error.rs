use thiserror::Error;

/// Errors raised by the exact and numerical kernels.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("degree too small: {0}")]
    DegreeTooSmall(String),
    #[error("not a perfect square locally: {0}")]
    NotASquare(String),
    #[error("insufficient precision: requested w^{requested}, series known through w^{order}")]
    InsufficientPrecision { requested: i64, order: i64 },
    #[error("not traceless")]
    NotTraceless,
    #[error("invalid Lie type {family}{rank}")]
    InvalidLieType { family: char, rank: usize },
    #[error("invalid divisor: {0}")]
    InvalidDivisor(String),
    #[error("invalid Higgs field: {0}")]
    InvalidHiggsField(String),
    #[error("degree overflow: {0}")]
    DegreeOverflow(String),
    #[error("direction not tangent to leaf")]
    NotTangentToLeaf,
    #[error("non-simple branch point")]
    NonSimpleBranchPoint,
    #[error("genericity failure: {0}")]
    NotGeneric(String),
    #[error("invalid form: {0}")]
    InvalidForm(String),
    #[error("cocycle condition violated: {0}")]
    CocycleViolation(String),
    #[error("mismatched varieties")]
    MismatchedVarieties,
    #[error("root finding did not converge after {iterations} iterations (max residual {residual:e})")]
    NoConvergence { iterations: usize, residual: f64 },
    #[error("configuration too degenerate: {0}")]
    TooDegenerate(String),
    #[error("step too large: {0}")]
    StepTooLarge(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("non-finite value: {0}")]
    NonFinite(String),
    #[error("{0}")]
    Parse(#[from] crate::jets::ParseError),
    #[error("format error at {path}: {message}")]
    Format { path: String, message: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
