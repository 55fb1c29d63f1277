use thiserror::Error;

use crate::diagnostics::Diagnostics;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed table: {0}")]
    MalformedTable(String),

    #[error("not a quasigroup: {0}")]
    NotLatin(String),

    #[error("no two-sided identity element")]
    NoIdentity,

    #[error("element {delta} is not idempotent")]
    NotIdempotent { delta: usize },

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("size mismatch: {0}")]
    SizeMismatch(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    /// One or more named conditions failed; the diagnostics carry witnesses.
    #[error("conditions failed: {}", .0.failed_names().join(", "))]
    Conditions(Diagnostics),

    #[error("m = {m} does not solve the congruence system: {detail}")]
    Congruence { m: i64, detail: String },

    #[error("factorization impossible: {0}")]
    FactorizationImpossible(String),

    #[error("resource cap exceeded: {what} reached {reached} (cap {cap})")]
    ResourceCap { what: &'static str, reached: usize, cap: usize },

    #[error("exhaustive enumeration unsupported for order {n}; use sampling mode")]
    TooLargeForExhaustive { n: usize },

    #[error("singular matrix: negative antipode powers need an invertible antipode")]
    Singular,

    #[error("internal consistency check failed: {0}")]
    Internal(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
