use num_bigint::BigInt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("gcd(0, 0) is undefined")]
    GcdOfZeros,

    #[error("{a} is not invertible modulo {n}")]
    NotInvertible { a: BigInt, n: BigInt },

    #[error("expected 0 < a < n with gcd(a, n) = 1, got n = {n}, a = {a}")]
    BadFraction { n: BigInt, a: BigInt },

    #[error("invalid Hirzebruch-Jung string: {0}")]
    BadString(String),

    #[error("strings {left} and {right} are not conjugate")]
    NotConjugate { left: String, right: String },

    #[error("{0} is not a T-string")]
    NotTString(String),

    #[error("1/{n}(1,{a}) has no Q-Gorenstein smoothing")]
    NoSmoothing { n: BigInt, a: BigInt },

    #[error("{triple} does not solve {equation} (residual {residual})")]
    NotASolution {
        equation: String,
        triple: String,
        residual: BigInt,
    },

    #[error("mutation produced a non-positive entry")]
    NonPositiveMutation,

    #[error("rays {0} and {1} are collinear")]
    Collinear(String, String),

    #[error("weights ({0}, {1}, {2}) are not pairwise coprime positive integers")]
    BadWeights(BigInt, BigInt, BigInt),

    #[error("inconsistent group action: {0}")]
    BadAction(String),

    #[error("unknown family id {0:?}")]
    UnknownFamily(String),

    #[error("malformed fibre graph: {0}")]
    MalformedFibre(String),

    #[error("table data: {0}")]
    Data(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
