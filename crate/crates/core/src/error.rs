use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("continued fraction has a tail evaluating to zero")]
    ZeroTail,
    #[error("continued fraction is empty")]
    EmptyCf,
    #[error("value out of range: {0}")]
    OutOfRange(String),
    #[error("no nonzero even quotient for {p} / {q}")]
    NoEvenQuotient { p: String, q: String },
    #[error("{p}/{q} has odd numerator and odd denominator; no even continued fraction exists")]
    BothOdd { p: String, q: String },
    #[error("invalid continued fraction entry {entry}: {reason}")]
    InvalidEntry { entry: String, reason: &'static str },
    #[error("operation undefined on the zero polynomial")]
    ZeroPolynomial,
    #[error("exponents mix the integer and the half-integer grid")]
    MixedGrid,
    #[error("snake graph has {0} tiles; at most 63 tile variables are supported")]
    TooManyTiles(usize),
    #[error("matching enumeration exceeds the budget of {budget} (graph has {count})")]
    BudgetExceeded { budget: u64, count: String },
    #[error("recursion requires a positive first entry; use the mirror route for b_1 < 0")]
    WrongOrientation,
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

impl Error {
    pub(crate) fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            pos,
            msg: msg.into(),
        }
    }
}
