use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("empty sample")]
    EmptySample,
    #[error("non-finite input")]
    NonFinite,
    #[error("value outside empirical support: {0}")]
    OutsideSupport(f64),
    #[error("u out of range: {0}")]
    UnitOutOfRange(f64),
    #[error("length mismatch: {left} != {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("constant variable")]
    ConstantVariable,
    #[error("basis degree exceeds unique values − 1 (requested {requested}, unique values {unique})")]
    DegreeTooLarge { requested: usize, unique: usize },
    #[error("basis degree must be at least 1")]
    ZeroDegree,
    #[error("basis index {index} out of range 1..={degree}")]
    IndexOutOfRange { index: usize, degree: usize },
    #[error("basis does not match the sample it is applied to")]
    BasisMismatch,
    #[error("comean tensor must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("expected a {expected}-way comean tensor, got {got}-way")]
    Arity { expected: usize, got: usize },
    #[error("no dependence component")]
    NoDependence,
    #[error("need at least two variables")]
    TooFewVariables,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

pub type Result<T> = std::result::Result<T, Error>;
