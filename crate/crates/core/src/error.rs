use thiserror::Error;

/// Errors raised by the number-theory routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("factorization of {value} is incomplete: composite cofactor {cofactor} resisted the configured effort")]
    IncompleteFactorization { value: String, cofactor: String },

    #[error("Jacobi symbol requires an odd positive modulus, got {0}")]
    EvenModulus(u64),

    #[error("{value} is not invertible modulo {modulus}")]
    NotCoprime { value: u64, modulus: u64 },

    #[error("prime {p} divides b = {b}; periods are only defined for gcd(b, p) = 1")]
    PrimeDividesB { p: u64, b: u64 },

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("polynomial moduli differ: {0} vs {1}")]
    ModulusMismatch(u64, u64),

    #[error("parameters (a, b) = ({a}, {b}) violate the squarefree/parity conditions")]
    NotStarValid { a: u64, b: u64 },

    #[error("Legendre symbol of the discriminant at {p} is +1; the check needs a non-split prime")]
    SplitPrime { p: u64 },

    #[error("prediction hypotheses fail for (a, b, s) = ({a}, {b}, {s})")]
    HypothesesNotMet { a: u64, b: u64, s: u64 },

    #[error("internal consistency check failed: {0}")]
    Inconsistency(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
