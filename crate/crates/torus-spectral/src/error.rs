//! Crate error type and process exit code mapping.

use crate::lattice::LatticeIndex;

/// Errors surfaced by library operations.
///
/// Variants are grouped by how the command line maps them to exit codes:
/// input/parse problems exit 2, contract violations exit 3, and honest
/// refusals to decide exit 4.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("malformed document: {0}")]
    Document(String),

    #[error("empty lattice box: {0}")]
    EmptyBox(String),

    #[error("series is not complete on the required region: {0}")]
    IncompleteSupport(String),

    #[error("both arguments have unbounded declared support")]
    BothUnbounded,

    #[error("support box is not symmetric in axis {axis}")]
    AsymmetricBox { axis: u8 },

    #[error("series is not {parity} in x{axis} at index ({}, {})", witness.0, witness.1)]
    ParityViolation {
        axis: u8,
        parity: &'static str,
        witness: LatticeIndex,
    },

    #[error("solvability violated: coefficient at (0, 0) must vanish, found {found}")]
    NonzeroMean { found: String },

    #[error("traces are incompatible at (p, q) = ({p}, {q}): {detail}")]
    IncompatibleTraces { p: u32, q: u32, detail: String },

    #[error("trace is inconsistent with the equation: {0}")]
    InconsistentTrace(String),

    #[error("linear system is inconsistent: {0}")]
    InconsistentSystem(String),

    #[error("contract violation: {0}")]
    Contract(String),

    #[error("inconclusive: {0}")]
    Inconclusive(String),
}

impl Error {
    /// Process exit code for this error (0 is success, reserved elsewhere).
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse { .. } | Error::Io(_) | Error::Document(_) => 2,
            Error::Inconclusive(_) => 4,
            _ => 3,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
