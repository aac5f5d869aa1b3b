use thiserror::Error;

/// Errors raised by constructions, checks and I/O in this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("malformed exponent in `{0}`")]
    MalformedExponent(String),
    #[error("negative exponent in `{0}`")]
    NegativeExponent(String),
    #[error("malformed monomial `{0}`")]
    MalformedMonomial(String),
    #[error("invalid variable context: {0}")]
    InvalidContext(String),
    #[error("context mismatch: expected {expected} variables, found {found}")]
    ContextMismatch { expected: usize, found: usize },
    #[error("monomial {divisor:?} does not divide {dividend:?} (variable index {var})")]
    NotDivisible {
        dividend: Vec<u32>,
        divisor: Vec<u32>,
        var: usize,
    },
    #[error("exponent overflow")]
    ExponentOverflow,
    #[error("empty input: {0}")]
    EmptyInput(&'static str),
    #[error("element is not homologically homogeneous")]
    MixedDegree,
    #[error("element is not multigraded-homogeneous")]
    MixedMultidegree,
    #[error("unknown basis id {0}")]
    UnknownBasis(usize),
    #[error("invalid complex: {0}")]
    InvalidComplex(String),
    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),
    #[error("divided power undefined: {0}")]
    DividedPower(String),
    #[error("divided power index {k} exceeds the configured bound {bound}")]
    PowerBound { k: usize, bound: usize },
    #[error("multigrading violation: {0}")]
    Multigrading(String),
    #[error("invalid construction: {0}")]
    Construction(String),
    #[error("factor mismatch: {0}")]
    FactorMismatch(String),
    #[error("property `{property}` is inapplicable: {reason}")]
    Inapplicable { property: String, reason: String },
    #[error("strand box has {cells} cells, cap is {cap}")]
    BoxTooLarge { cells: u128, cap: u128 },
    #[error("factorial overflow")]
    FactorialOverflow,
    #[error("Scarf closure violated: {0}")]
    ScarfClosure(String),
    #[error("json: {0}")]
    Json(String),
    #[error("input: {0}")]
    Input(String),
    #[error("io: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
