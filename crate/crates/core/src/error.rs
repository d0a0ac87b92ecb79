use thiserror::Error;

/// Failures reported by the computational core.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("letter x{letter} out of range for arity {arity}")]
    LetterOutOfRange { letter: usize, arity: u8 },
    #[error("arity must be between 1 and 255, got {0}")]
    InvalidArity(usize),
    #[error("arity mismatch: {left} vs {right}")]
    ArityMismatch { left: u8, right: u8 },
    #[error("element is not homogeneous")]
    NotHomogeneous,
    #[error("row {row} of the presentation is not homogeneous against the generator shifts")]
    RowNotHomogeneous { row: usize },
    #[error("map does not preserve degree at entry ({row}, {col})")]
    NotDegreePreserving { row: usize, col: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("generation not certified at cap {cap}: Hilbert identity fails in degree {degree}")]
    GenerationNotCertified { cap: i64, degree: i64 },
    #[error("class is not expressible as a multiple of O({twist})")]
    NotExpressibleAtTwist { twist: i64 },
    #[error("normalized rank requested at level {level} below the stable index {i0}")]
    RankNotStabilized { level: i64, i0: i64 },
    #[error("cannot lower level from {from} to {to}")]
    LevelDecrease { from: i64, to: i64 },
    #[error("element is not idempotent")]
    NotIdempotent,
    #[error("element is zero")]
    ZeroElement,
    #[error("element has a component of nonzero degree {0}")]
    NotDegreeZero(i64),
    #[error("element is not in filtration level F_{level} (degree {degree} needs level {needed})")]
    NotInFiltrationLevel { level: u32, degree: i64, needed: u32 },
    #[error("internal certificate mismatch: {0}")]
    CertificateMismatch(String),
    #[error("input sequence is not exact in degree {degree}: {reason}")]
    NotExactInput { degree: i64, reason: String },
    #[error("truncation index {index} is below the certified stable index {i0}")]
    TruncationNotFree { index: i64, i0: i64 },
    #[error("morphism is not well defined: relation {row} does not map into the target relations")]
    IllDefinedMorphism { row: usize },
    #[error("{what} at degree/level {at} exceeds configured cap {cap}")]
    CapExceeded { what: &'static str, at: i64, cap: i64 },
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
