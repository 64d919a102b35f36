use thiserror::Error;

use crate::coeffring::UnknownId;

/// Errors raised by the algebra, the construction engine and the document format.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("quadratic extension parameter {0} is a rational square")]
    NotAField(String),
    #[error("operands live in different quadratic extensions")]
    MixedField,
    #[error("operands live in different coefficient rings")]
    MixedRing,
    #[error("product of two forms that both carry unknown constants")]
    NonlinearInUnknowns,
    #[error("antiderivative would need a logarithm: x^-1 coefficient is nonzero")]
    NonIntegrableTerm,
    #[error("truncation too short: {0}")]
    TruncationTooShort(String),
    #[error("unknown constant {0} has no value")]
    UnboundUnknown(UnknownId),
    #[error("size mismatch: {0} vs {1}")]
    SizeMismatch(usize, usize),
    #[error("leading matrix E is not invertible over the coefficient ring")]
    NonInvertibleE,
    #[error("inconsistent linear system: {0}")]
    InconsistentSystem(String),
    #[error("linear system is underdetermined in {0}")]
    UnderdeterminedSystem(String),
    #[error("no polynomial relation found: {0}")]
    NoRelationFound(String),
    #[error("relation is not unique at this degree")]
    RankDeficient,
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unsupported format version {0:?}")]
    VersionMismatch(String),
    #[error("invalid rational {0:?}")]
    InvalidRational(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
