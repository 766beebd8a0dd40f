use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("chart error: {0}")]
    Chart(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("divisor is not a single power of pi: {0}")]
    NonMonomialDivisor(String),
    #[error("gamma function undefined at {0}")]
    GammaDomain(String),
    #[error("second x-derivative requested on {0}; only first-order jets are tracked at x0")]
    SecondDerivative(String),
    #[error("symbol is already restricted to the boundary sphere")]
    AlreadyRestricted,
    #[error("operation requires a {0} symbol")]
    WrongMode(&'static str),
    #[error("rational function is not proper: numerator degree {num} >= denominator degree {den}")]
    ImproperRational { num: usize, den: usize },
    #[error("rational function is not integrable on the real line: numerator degree {num}, denominator degree {den}")]
    NonIntegrable { num: usize, den: usize },
    #[error("index {0} left uncontracted")]
    DanglingIndex(String),
    #[error("insufficient symbol table depth: {0}")]
    InsufficientDepth(String),
    #[error("leading symbol cannot be inverted: {0}")]
    NonScalarLeading(String),
    #[error("unknown built-in operator {0:?}")]
    UnknownBuiltin(String),
    #[error("interior functional requires even dimension, got {0}")]
    OddDimension(u8),
    #[error("quadrature did not converge: {0}")]
    Quadrature(String),
    #[error("parse error at {line}:{col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("validation error: {0}")]
    Validation(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
