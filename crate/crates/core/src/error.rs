use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("division by zero")]
    DivisionByZero,
    #[error("denominator vanishes at the evaluation point")]
    PoleAtPoint,
    #[error("missing value for parameter {0}")]
    MissingParameter(String),
    #[error("unknown parameter `{0}`")]
    UnknownParameter(String),
    #[error("elements live over different alphabets")]
    AlphabetMismatch,
    #[error("no image given for generator `{0}`")]
    MissingImage(String),
    #[error("tensor factor {factor} out of range for arity {arity}")]
    BadFactorIndex { factor: usize, arity: usize },
    #[error("relation has a zero leading coefficient")]
    NonOrientable,
    #[error("degree bound {bound} is below the largest rule degree {needed}")]
    BoundTooSmall { bound: usize, needed: usize },
    #[error("degree {degree} exceeds the oracle cap {cap}")]
    DegreeOverflow { degree: usize, cap: usize },
    #[error("generator map is not invertible: {0}")]
    NonInvertibleMap(String),
    #[error("{0}")]
    Usage(String),
    #[error("{line}:{col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("{line}:{col}: undeclared symbol `{name}`")]
    UndeclaredSymbol { line: usize, col: usize, name: String },
    #[error("{line}:{col}: duplicate generator `{name}`")]
    DuplicateGenerator { line: usize, col: usize, name: String },
    #[error("unknown presentation `{0}`")]
    UnknownPresentation(String),
    #[error("unknown map `{0}`")]
    UnknownMap(String),
    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),
}
