use thiserror::Error;

use crate::vectorial::Selector;

/// Errors raised by the toolkit.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("extension degree {0} is outside the supported range 1..=24")]
    UnsupportedDegree(u32),
    #[error("modulus {modulus:#x} does not have degree {n}")]
    ModulusDegree { n: u32, modulus: u32 },
    #[error("modulus {0:#x} is reducible (no element of full multiplicative order)")]
    ReducibleModulus(u32),
    #[error("element {generator:#x} is not primitive in GF(2^{n})")]
    NotPrimitive { n: u32, generator: u32 },
    #[error("element {value:#x} does not fit in GF(2^{n})")]
    ElementRange { n: u32, value: u32 },
    #[error("{m} does not divide the extension degree {n}")]
    NotDivisor { m: u32, n: u32 },
    #[error("operation requires an even number of variables, got {0}")]
    OddDegree(u32),
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("functions live over different fields or variable counts")]
    FieldMismatch,
    #[error("function is not bent: W({point:#x}) = {value}")]
    NotBent { point: u32, value: i32 },
    #[error("value {value:#x} at input {input:#x} is not in the subfield GF(2^{m})")]
    NotInSubfield { m: u32, input: u32, value: u32 },
    #[error("selector {0} is invalid for this function")]
    InvalidSelector(Selector),
    #[error("bound 2^m - 2^(m - n/2) needs m >= n/2 (n = {n}, m = {m})")]
    BoundRange { n: u32, m: u32 },
    #[error("arity mismatch: expected {expected}, got {got}")]
    Arity { expected: usize, got: usize },
    #[error("defining set has a repeated element {0:#x}")]
    RepeatedElement(u32),
    #[error("invalid spectrum: {0}")]
    InvalidSpectrum(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("precondition failed for the component λ={lambda:#x}: {reason}")]
    ComponentPrecondition { lambda: u32, reason: String },
    #[error("u_{i} times the conjugate of u_{j} is not in the nonzero half-field")]
    UCondition { i: usize, j: usize },
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("invalid parameters: {0}")]
    Parameters(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }
}
