use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("series did not converge within {terms} terms")]
    NonConvergent { terms: usize },
    #[error("degree {degree} exceeds cap {cap}")]
    DegreeCapExceeded { degree: u32, cap: u32 },
    #[error("operator not defined for model {0}")]
    InvalidModel(String),
    #[error("domain error: {0}")]
    DomainError(String),
    #[error("degenerate bilinear form on remaining seeds")]
    DegenerateGram,
    #[error("cancellation failed, residual terms: {0:?}")]
    CancellationFailure(Vec<String>),
    #[error("complex branch: discriminant {discriminant}")]
    ComplexBranch { discriminant: f64 },
    #[error("no sign change on bracket [{lo}, {hi}]: D(lo)={f_lo}, D(hi)={f_hi}")]
    BracketFailure { lo: f64, hi: f64, f_lo: f64, f_hi: f64 },
    #[error("no positive root")]
    NoPhysicalRoot,
    #[error("degenerate root: |D'| = {0}")]
    DegenerateRoot(f64),
    #[error("constraint violated: {0}")]
    ConstraintViolation(String),
    #[error("decomposition residual {0}")]
    DecompositionResidual(f64),
    #[error("singular matrix")]
    SingularMatrix,
    #[error("invalid weights: {0}")]
    InvalidWeights(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("duplicate cell ({family}, {n})")]
    DuplicateCell { family: String, n: u32 },
    #[error("unknown family {name:?} at line {line}")]
    UnknownFamily { line: usize, name: String },
    #[error("io: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
