use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("bar(d) != -d for d = {0}")]
    SkewViolation(String),

    #[error("nonzero constant term in {0}")]
    ConstantTermObstruction(String),

    #[error("invalid group element: {0}")]
    InvalidElement(String),

    #[error("parabolic generator out of range: {0}")]
    InvalidParabolic(String),

    #[error("conjugated generator {0} is not a simple reflection of W_I")]
    NotSimpleConjugate(String),

    #[error("bar matrix is not an involution at ({row}, {col})")]
    NotInvolution { row: usize, col: usize },

    #[error("bar matrix is not unitriangular at ({row}, {col})")]
    NotTriangular { row: usize, col: usize },

    #[error("no bar-invariant solution at ({row}, {col}): {reason}")]
    Obstruction { row: usize, col: usize, reason: String },

    #[error("vector is not in the span of the target basis")]
    NotInSpan,

    #[error("coefficient {0} is not a Laurent polynomial")]
    NonLaurentCoefficient(String),

    #[error("bad coset data: {0}")]
    BadCosetData(String),

    #[error("no operator satisfies the constraints: {0}")]
    NoSolution(String),

    #[error("constraints admit {count} normalized solutions: {what}")]
    NonUniqueSolution { what: String, count: usize },

    #[error("no weight-filtered intertwiner exists")]
    NoIntertwiner,

    #[error("intertwiner is not unique ({free} free parameters)")]
    NonUniqueIntertwiner { free: usize },

    #[error("wedge power {m} exceeds rank bound n = {n}")]
    RankTooSmall { m: usize, n: usize },

    #[error("based submodule mismatch: {0}")]
    SpanMismatch(String),

    #[error("invalid module descriptor: {0}")]
    InvalidDescriptor(String),

    #[error("rank {rank} exceeds the limit {limit} for type {family}")]
    RankLimit { family: char, rank: usize, limit: usize },

    #[error("space dimension {dim} exceeds the limit {limit}")]
    SizeLimit { dim: usize, limit: usize },

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}
