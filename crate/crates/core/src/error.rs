use thiserror::Error;

/// Errors surfaced by the library. Everything here is a domain or usage
/// error; internal invariant breaks panic instead.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("order must be a positive integer, got {0}")]
    InvalidOrder(usize),

    #[error("denominator of {value} is divisible by the modulus {q}")]
    DenominatorDivisibleByQ { value: String, q: u64 },

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("series parameter {name} = {value} is outside the open unit interval")]
    DivergentInput { name: &'static str, value: String },

    #[error("tolerance not reached within {cap} terms (tail bound {tail})")]
    TolNotReached { cap: usize, tail: String },

    #[error("tolerance must be positive, got {0}")]
    InvalidTolerance(String),

    #[error("unknown identity id `{0}`")]
    UnknownIdentity(String),

    #[error("unknown congruence check id `{0}`")]
    UnknownCheck(String),

    #[error("parameter out of domain: {0}")]
    ParameterOutOfDomain(String),

    #[error("missing parameter `{0}`")]
    MissingParameter(&'static str),

    #[error("cannot parse `{0}` as an exact rational")]
    InvalidRational(String),
}

pub type Result<T> = std::result::Result<T, Error>;
