use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{dividend} is not divisible by {divisor}")]
    NonDivisible { dividend: String, divisor: String },

    #[error("limit as lambda -> infinity diverges (net lambda-degree {degree})")]
    DivergentLimit { degree: i64 },

    #[error("backend mismatch: {0}")]
    BackendMismatch(String),

    #[error("size mismatch: expected {expected}, found {found}")]
    SizeMismatch { expected: usize, found: usize },

    #[error("{family} requires n >= {min}, got n = {n}")]
    RankTooSmall { family: &'static str, n: usize, min: usize },

    #[error("weight mismatch: expected [h, z] = -{expected} z ({detail})")]
    WeightMismatch { expected: i64, detail: String },

    #[error("generator relation {0} does not hold")]
    GeneratorRelation(String),

    #[error("unknown root system type {0:?}")]
    UnknownType(String),

    #[error("Jacobi identity fails: {0}")]
    JacobiFailure(String),

    #[error("ad h is not diagonalizable on the span: {0}")]
    NotDiagonalizable(String),

    #[error("Casimir image is not scalar: {0}")]
    NotScalar(String),

    #[error("Poisson bracket input has odd total degree")]
    OddDegreeInput,

    #[error("differential operator order {0} exceeds the bound 24")]
    OrderBound(u32),

    #[error("syntax error at {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("unknown symbol {name:?} at {pos}")]
    UnknownSymbol { pos: usize, name: String },

    #[error("unbound parameter {0}")]
    UnboundParameter(String),

    #[error("unknown coefficient {0} appears non-linearly or on the left side")]
    InvalidUnknown(String),

    #[error("degree bound {requested} exceeds the maximum {max}")]
    DegreeBoundExceeded { requested: usize, max: usize },

    #[error("invalid algebra key {0:?}")]
    InvalidKey(String),

    #[error("catalog: {0}")]
    Catalog(String),
}
