use thiserror::Error;

/// Errors raised by the polynomial, ideal and Chow-calculus layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ring mismatch: {0}")]
    RingMismatch(String),
    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),
    #[error("invalid ring specification: {0}")]
    InvalidRing(String),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("unknown variable `{name}` at byte {pos}")]
    UnknownVariable { name: String, pos: usize },
    #[error("non-integral coefficient {0} in a ring over Z")]
    RationalInIntegerRing(String),
    #[error("reduction budget of {0} steps exceeded")]
    BudgetExceeded(u64),
    #[error("exact division failed: {0}")]
    DivisionFailure(String),
    #[error("ideal is not homogeneous: {0}")]
    InhomogeneousIdeal(String),
    #[error("patching precondition failed: {0} is a zero divisor")]
    PreconditionNzd(String),
    #[error("element cannot be brought to the form a + b*tau: {0}")]
    NotReducible(String),
    #[error("lift failure: {0}")]
    LiftFailure(String),
    #[error("self-check failed: {0}")]
    SelfCheck(String),
}

pub type Result<T> = std::result::Result<T, Error>;
