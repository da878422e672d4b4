use thiserror::Error;

use crate::matroid::Label;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("GF({p}^{e}) exceeds the field size cap of {cap}")]
    FieldTooLarge { p: u32, e: u32, cap: u64 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("element {value} is not in a field of order {order}")]
    InvalidElement { value: u32, order: u32 },
    #[error("{s} is not the order of a subfield of GF({order})")]
    NotASubfield { s: u64, order: u32 },
    #[error("omega lies in the subfield of order {0}")]
    OmegaInSubfield(u32),
    #[error("operands live over different fields")]
    FieldMismatch,
    #[error("unknown label {0}")]
    UnknownLabel(Label),
    #[error("duplicate label {0}")]
    DuplicateLabel(Label),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("operation requires a simple matroid")]
    NotSimple,
    #[error("input of size {size} exceeds the cap of {cap} for {what}")]
    OverCap { what: &'static str, size: u64, cap: u64 },
    #[error("integer overflow while evaluating {0}")]
    Overflow(&'static str),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("not a projective geometry: {0}")]
    NotProjectiveGeometry(String),
    #[error("element {0} is a loop")]
    Loop(Label),
    #[error("element {0} is parallel to a point of the geometry")]
    ParallelToGeometry(Label),
    #[error("{0} is not a line of the geometry")]
    NotALine(String),
    #[error("invalid unstable set: {0}")]
    InvalidUnstableSet(String),
    #[error("retry budget of {0} attempts exhausted")]
    RetryBudgetExhausted(u32),
    #[error("rank threshold unmet: rank {have} given, at least {needed} required")]
    ThresholdUnmet { have: usize, needed: usize },
    /// A guaranteed postcondition failed; this indicates a bug, not bad input.
    #[error("internal invariant violated: {0}")]
    InvariantViolated(String),
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
