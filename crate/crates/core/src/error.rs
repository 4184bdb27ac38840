use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("coefficient domain mismatch: {0}")]
    DomainMismatch(String),
    #[error("empty input")]
    EmptyInput,
    #[error("moduli {0} and {1} are not coprime")]
    NonCoprimeModuli(String, String),
    #[error("rational reconstruction failed: {0}")]
    ReconstructionFailure(String),
    #[error("{p} is not usable here: {reason}")]
    BadPrime { p: u64, reason: String },
    #[error("{0} is not a root of the indicial polynomial")]
    NotAnExponent(String),
    #[error("exponent {rho} is degenerate: {other} is also an indicial root")]
    DegenerateExponent { rho: String, other: String },
    #[error("precision underflow: need {need} valid terms, have {have}")]
    TruncationUnderflow { need: i64, have: i64 },
    #[error("series alignment: {0}")]
    Alignment(String),
    #[error("parity violation at coefficient index {0}")]
    ParityViolation(usize),
    #[error("need more terms: {needed} required, {available} available")]
    NeedMoreTerms { needed: u64, available: u64 },
    #[error("no annihilating operator found: {0}")]
    NoOdeFound(String),
    #[error("need more samples: {0}")]
    NeedMoreSamples(String),
    #[error("samples violate the linear model: {0}")]
    ModelViolation(String),
    #[error("integrality: {0}")]
    Integrality(String),
    #[error("irregular singular point at {0}")]
    IrregularPoint(String),
    #[error("ambiguous lift of indicial root: {0}")]
    AmbiguousLift(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
}

impl Error {
    pub fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse { line, msg: msg.into() }
    }

    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }
}
