use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("unsupported prime {0} (must satisfy 2 <= p <= 2^31)")]
    PrimeOutOfRange(u64),
    #[error("extension degree {0} is not supported (1 <= e <= 8 and p^e < 2^63)")]
    DegreeOutOfRange(usize),
    #[error("minimal polynomial {0} is not monic irreducible over F_{1}")]
    NotIrreducible(String, u64),
    #[error("ring mismatch: {0}")]
    RingMismatch(String),
    #[error("presentation error: {0}")]
    Presentation(String),
    #[error("point {0} does not lie on the scheme")]
    PointOffScheme(String),
    #[error("ideal is not prime: {0} is a zero divisor modulo the locus")]
    ZeroDivisor(String),
    #[error("cannot certify primality of the locus ideal: {0}")]
    PrimalityUnknown(String),
    #[error("ideal generated by the locus is the unit ideal")]
    EmptyLocus,
    #[error("flatness over Z_(p) must be asserted for mixed-characteristic dimension")]
    FlatnessRequired,
    #[error("outside the supported class: {0}")]
    Unsupported(String),
    #[error("ring of order {size} exceeds the oracle bound {bound}")]
    TooLarge { size: u64, bound: u64 },
    #[error("ring is not finite: {0}")]
    Infinite(String),
    #[error("ring axiom violated: {0}")]
    RingAxiom(String),
}

pub type Result<T> = std::result::Result<T, Error>;
