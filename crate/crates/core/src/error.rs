use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("gcd(a, b) = {gcd}, expected coprime exponents")]
    NotCoprime { a: u32, b: u32, gcd: u32 },
    #[error("invalid curve: {}", .0.join("; "))]
    InvalidCurve(Vec<String>),
    #[error("{what} exceeds cap {cap}")]
    CapExceeded { what: String, cap: u64 },
    #[error("{0}")]
    InvalidInput(String),
    #[error("coefficient ring mismatch: {0}")]
    RingMismatch(String),
    #[error("internal assertion failed: {0}")]
    Assertion(String),
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
}
