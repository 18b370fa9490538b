use thiserror::Error;

/// Errors raised by the library. Every variant is a domain error: the input
/// was well formed but the operation is undefined on it.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operation requires a nonempty word")]
    EmptyWord,
    #[error("cannot parse word {input:?}: {reason}")]
    WordSyntax { input: String, reason: String },
    #[error("shiftDown({m}) needs every part > {m}, found {part}")]
    ShiftBelowOne { m: u64, part: u64 },
    #[error("part {part} lies outside the declared range of iota")]
    IotaDomain { part: u64 },
    #[error("iota values must be strictly increasing and positive")]
    IotaNotIncreasing,
    #[error("poset cover relation contains a cycle through {0:?}")]
    Cycle(String),
    #[error("unknown poset element {0:?}")]
    UnknownElement(String),
    #[error("relation is not a partial order: {0}")]
    NotAPartialOrder(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("denominator has zero constant term; no power series expansion")]
    ZeroConstantTerm,
    #[error("series coefficient is not an integer (constant term of denominator is not a unit)")]
    NonIntegralSeries,
    #[error("syntax error at position {pos}: {msg}")]
    ExprSyntax { pos: usize, msg: String },
    #[error("pattern blocks must be nonempty")]
    EmptyBlock,
    #[error("cannot parse pattern {input:?}: {reason}")]
    PatternSyntax { input: String, reason: String },
    #[error("index set must be nonempty with all indices >= 1")]
    BadIndexSet,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("unknown witness kind {0:?}")]
    UnknownWitness(String),
    #[error("malformed input: {0}")]
    Malformed(String),
}

pub type Result<T> = std::result::Result<T, Error>;
