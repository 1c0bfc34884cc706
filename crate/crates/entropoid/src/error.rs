use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("{0} is not prime")]
    NotPrime(String),
    #[error("{0} is not a safe prime")]
    NotSafePrime(String),
    #[error("modulus does not fit the residue type {0}")]
    UnsupportedModulus(&'static str),
    #[error("gave up after {0} attempts")]
    ExhaustedAttempts(u64),
    #[error("invalid entropoid constant: {0}")]
    InvalidConstant(&'static str),
    #[error("element has no inverse under *")]
    NotInvertible,
    #[error("input exceeds the enumeration guard ({0})")]
    TooLarge(String),
    #[error("invalid power index: {0}")]
    InvalidIndex(String),
    #[error("expected {expected} bytes, got {got}")]
    BadLength { expected: usize, got: usize },
    #[error("encoded component is not reduced modulo p")]
    NonCanonical,
    #[error("peer element lies outside the multiplicative subgroupoid")]
    InvalidPeer,
    #[error("digest maps to the zero index")]
    ZeroDigest,
    #[error("malformed signature")]
    MalformedSignature,
    #[error("not a probability distribution: {0}")]
    BadDistribution(String),
    #[error("parity test is inconclusive")]
    Inconclusive,
    #[error("unsupported parameter: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
