use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("Gram matrix is not symmetric at ({0}, {1})")]
    NotSymmetric(usize, usize),
    #[error("lattice is degenerate")]
    Degenerate,
    #[error("invalid root lattice {kind}{rank}")]
    InvalidRootLattice { kind: char, rank: usize },
    #[error("scale factor must be nonzero")]
    ZeroScale,
    #[error("sublattice generators are linearly dependent")]
    RankDeficient,
    #[error("vector is not in the span of the lattice")]
    NotInSpan,
    #[error("glue vector has non-integral pairing {0}")]
    NonIntegralPairing(String),
    #[error("glue produces an odd vector of norm {0}")]
    OddNorm(String),
    #[error("lattice is odd")]
    OddLattice,
    #[error("group of order {order} exceeds the enumeration limit {limit}")]
    GroupTooLarge { order: String, limit: u64 },
    #[error("lattice is not definite")]
    NotDefinite,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("infeasible: {0}")]
    Infeasible(String),
    #[error("not a prime: {0}")]
    NotPrime(String),
    #[error("cannot factor {0}")]
    Factorization(String),
    #[error("unknown fiber type {0}")]
    UnknownFiber(String),
    #[error("unknown lattice name {0}")]
    UnknownName(String),
    #[error("unknown claim id {0}")]
    UnknownClaim(String),
    #[error("parse error at line {line}, column {column}: {msg}")]
    Parse { line: usize, column: usize, msg: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
