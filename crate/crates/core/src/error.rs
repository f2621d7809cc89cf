use thiserror::Error;

#[derive(Debug, Error)]
pub enum OrigamiError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },

    #[error("not a bijection: {0}")]
    NotBijective(String),

    #[error("intransitive gluing: squares reachable from 1 are {reachable:?} out of {n}")]
    Intransitive { n: usize, reachable: Vec<usize> },

    #[error("h acts on {h} squares but v acts on {v}")]
    SizeMismatch { h: usize, v: usize },

    #[error("an origami needs at least one square")]
    Empty,

    #[error("matrix [[{a},{b}],[{c},{d}]] has determinant {det}, expected 1")]
    NotUnimodular {
        a: i64,
        b: i64,
        c: i64,
        d: i64,
        det: i64,
    },

    #[error("invalid direction ({0},{1})")]
    InvalidDirection(i64, i64),

    #[error("surface has genus {genus}; the operation needs genus at least 2")]
    GenusTooSmall { genus: usize },

    #[error("no witness found among directions with max norm {max_norm}")]
    NoWitness { max_norm: u32 },

    #[error("value out of range: {0}")]
    OutOfRange(String),

    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),

    #[error("corpus schema version {found} is not supported (expected {expected})")]
    SchemaVersion { found: u64, expected: u64 },

    #[error("corpus I/O: {0}")]
    Io(#[from] std::io::Error),

    #[error("corpus JSON: {0}")]
    Json(#[from] serde_json::Error),
}
