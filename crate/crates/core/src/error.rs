use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid radicand {0}: radicands must be square-free and different from 0 and 1")]
    InvalidRadicand(i64),
    #[error("radicands {0} and {1} are not coprime")]
    NotCoprime(i64, i64),
    #[error("too many radicands: {count} exceeds the bound {max}")]
    TooManyRadicands { count: usize, max: usize },
    #[error("field contexts {0:?} and {1:?} cannot be merged")]
    ContextMismatch(Vec<i64>, Vec<i64>),
    #[error("division by zero")]
    DivisionByZero,
    #[error("element is not real")]
    NotReal,
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("not in the moduli space: {0}")]
    NotInModuli(String),
    #[error("matrix is singular")]
    Singular,
    #[error("a degree-zero surface has no invariant witness function")]
    NoWitnessForDegree0,
    #[error("sampler exhausted {0} retries")]
    ExhaustedRetries(usize),
    #[error("cannot solve for an isotropic point at this height: {0}")]
    CannotSolveAtHeight(String),
    #[error("wrong signature: expected {expected:?}, found {found:?}")]
    WrongSignature {
        expected: (usize, usize, usize),
        found: (usize, usize, usize),
    },
    #[error("period point is not on the quadric")]
    NotOnQuadric,
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
