use thiserror::Error;

use crate::field::FieldSpec;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("{0} is not a supported prime characteristic")]
    NotPrime(u64),
    #[error("cannot parse scalar {0:?}")]
    Parse(String),
    #[error("scalar {value:?} is not an element of {field}")]
    WrongField { value: String, field: FieldSpec },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("not a complex: composite of consecutive differentials is nonzero")]
    NotAComplex,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("malformed algebra: {0}")]
    MalformedAlgebra(String),
    #[error("malformed module: {0}")]
    MalformedModule(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("modules live over different algebras")]
    AlgebraMismatch,
    #[error("minimal covers certified only for local algebras")]
    NotLocal,
    #[error("enumeration of {count} candidates exceeds the limit of {limit}")]
    EnumerationLimit { count: usize, limit: usize },
    #[error("family is empty")]
    EmptyFamily,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
