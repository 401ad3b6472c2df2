use thiserror::Error;

/// Errors raised by field arithmetic, function construction, matrix
/// construction and verification.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u32),

    #[error("extension degree must be at least 1")]
    ZeroDegree,

    #[error("field order {p}^{n} exceeds the cap of {cap}")]
    FieldTooLarge { p: u32, n: u32, cap: u64 },

    #[error("modulus must have {expected} coefficients (degree {degree}), got {got}")]
    ModulusWrongDegree {
        degree: u32,
        expected: usize,
        got: usize,
    },

    #[error("modulus is not monic")]
    ModulusNotMonic,

    #[error("modulus coefficient {coeff} is not in GF({p})")]
    ModulusCoefficient { coeff: u32, p: u32 },

    #[error("modulus {0:?} is reducible")]
    ModulusReducible(Vec<u32>),

    #[error("elements belong to different fields")]
    FieldMismatch,

    #[error("encoding {value} is out of range for a field of order {q}")]
    EncodingOutOfRange { value: u64, q: u32 },

    #[error("expected {expected} values, got {got}")]
    WrongLength { expected: usize, got: usize },

    #[error("polynomial degree {degree} is not below the field order {q}")]
    DegreeTooHigh { degree: usize, q: u32 },

    #[error("{0} requires odd characteristic")]
    EvenCharacteristic(&'static str),

    #[error("exhaustive enumeration of {q}^{q} functions exceeds the limit of {limit}")]
    ExhaustionTooLarge { q: u32, limit: u64 },

    #[error("matrix order {order} exceeds the cap of {cap}")]
    OrderTooLarge { order: u64, cap: usize },

    #[error("matrix order {order} is not q*lambda = {q}*{lambda}")]
    OrderLambdaMismatch { order: usize, q: u32, lambda: usize },

    #[error("row pair ({i}, {l}) is invalid for a matrix of order {order}")]
    InvalidRowPair { i: usize, l: usize, order: usize },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
