use std::path::PathBuf;

use thiserror::Error;

/// Violated configuration invariant, naming the offending field.
#[derive(Debug, Clone, PartialEq, Error)]
#[error("invalid config field `{field}`: {reason}")]
pub struct ConfigError {
    pub field: &'static str,
    pub reason: String,
}

impl ConfigError {
    pub fn new(field: &'static str, reason: impl Into<String>) -> Self {
        Self {
            field,
            reason: reason.into(),
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Config(#[from] ConfigError),

    #[error("matrix is not Hermitian: entry ({row}, {col}) differs from its mirror by {deviation:e}")]
    NonHermitian { row: usize, col: usize, deviation: f64 },

    #[error("Jacobi iteration did not converge within {sweeps} sweeps")]
    Convergence { sweeps: usize },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("parity rule violated: |m| = {m_abs} cannot carry total spin S = {s_total}")]
    Parity { m_abs: u32, s_total: u8 },

    #[error("cannot select the mixed NMR eigenstate: overlaps are degenerate")]
    DegenerateSelection,

    #[error("two-qubit model is degenerate: {0}")]
    DegenerateModel(String),

    #[error("rotation axis is not a unit vector (norm {norm})")]
    NonUnitAxis { norm: f64 },

    #[error("matrix is not unitary: max |U†U - 1| = {deviation:e}")]
    NonUnitary { deviation: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("sweep failed at x = {x}: {source}")]
    Sweep {
        x: f64,
        #[source]
        source: Box<Error>,
    },

    #[error("unknown column `{0}`")]
    UnknownColumn(String),

    #[error("no rows to write")]
    EmptyRows,

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}: parse error at line {line}, column {column}: {message}")]
    Parse {
        path: PathBuf,
        line: usize,
        column: usize,
        message: String,
    },
}

impl Error {
    /// Process exit code: 1 for configuration/input problems, 2 for numerical failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Config(_)
            | Error::Parse { .. }
            | Error::Io { .. }
            | Error::InvalidArgument(_)
            | Error::UnknownColumn(_) => 1,
            Error::Sweep { source, .. } => source.exit_code(),
            _ => 2,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
