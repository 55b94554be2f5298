//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// A clause mentions the same variable twice; strict 3-clauses require
    /// three distinct variables.
    #[error("duplicate variable x{var} in clause")]
    DuplicateVariable { var: u32 },

    #[error("variable x{var} out of range 1..={n_vars}")]
    VarOutOfRange { var: u32, n_vars: u32 },

    #[error("invalid variable count {n}: at least 3 variables are required")]
    InvalidN { n: u64 },

    #[error("invalid triple ({i},{j},{k}): need 1 <= i < j < k <= {n}")]
    InvalidTriple { i: u32, j: u32, k: u32, n: u32 },

    /// Unique-mode generation asked for more clauses than exist.
    #[error("requested {requested} unique clauses but only {capacity} exist over {n} variables")]
    CapacityExceeded {
        requested: u64,
        capacity: u64,
        n: u32,
    },

    /// Exhaustive enumeration refused: the bit vector would exceed the cap.
    #[error("enumeration over {n} variables exceeds the cap of {cap}")]
    CapExceeded { n: u32, cap: u32 },

    /// Freezing is defined only over a non-empty solution set.
    #[error("empty solution space: frozen variables are undefined")]
    EmptySolutionSpace,

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
