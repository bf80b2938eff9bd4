use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("rank must satisfy 1 <= n <= {max}, got {n}")]
    InvalidRank { n: usize, max: usize },
    #[error("p = {p} is below the Coxeter number h = {h}")]
    PBelowCoxeterNumber { p: u32, h: u32 },
    #[error("operation requires p = h = {h}, got p = {p}")]
    UnsupportedP { p: u32, h: u32 },
    #[error("expected a vector of length {expected}, got {actual}")]
    WrongLength { expected: usize, actual: usize },
    #[error("weight {0:?} is not in the root lattice")]
    NotInRootLattice(Vec<i64>),
    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),
    #[error("weight {omega:?} is not in the orbit of -2rho: {reason}")]
    OrbitMembership { omega: Vec<i64>, reason: String },
    #[error("element is not in W+: {0}")]
    NotInWplus(String),
    #[error("invalid generator index {index} for rank {n}")]
    InvalidGenerator { index: usize, n: usize },
    #[error("cannot parse word {0:?}")]
    ParseWord(String),
    #[error("subword oracle limited to length {bound}, got {length}")]
    OracleBoundExceeded { length: u32, bound: u32 },
    #[error("unknown output format {0:?}")]
    UnknownFormat(String),
    #[error("unknown fault {0:?} (expected: length)")]
    UnknownFault(String),
    #[error("cache version {found} not supported (expected {expected})")]
    CacheVersion { found: u32, expected: u32 },
    #[error("cache is for A{found_n} with p = {found_p}, requested A{n} with p = {p}")]
    CacheMismatch {
        found_n: usize,
        found_p: u32,
        n: usize,
        p: u32,
    },
    #[error("corrupt cache: {0}")]
    CorruptCache(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
