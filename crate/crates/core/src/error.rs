//! Error type shared by every module of the crate.

use thiserror::Error;

/// Result alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("j-sequence must contain at least one value")]
    EmptySequence,
    #[error("j_{index} = {value} is invalid: every subdivision value must be at least 2")]
    InvalidSubdivision { index: usize, value: u64 },
    #[error("explicit j-sequence has {len} entries but level {level} was requested")]
    SequenceTooShort { len: usize, level: usize },
    #[error("operation requires a periodic j-sequence")]
    NotPeriodic,
    #[error("integer overflow while computing {0}")]
    Overflow(&'static str),
    #[error("invalid plate configuration: {0}")]
    InvalidPlates(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("family {family} has negative multiplicity {value} at level {level}")]
    NegativeMultiplicity {
        family: String,
        level: usize,
        value: i128,
    },
    #[error("unsupported argument {0}")]
    UnsupportedArgument(String),
    #[error("pole at s = {0}")]
    Pole(String),
    #[error("excluded case: {0}")]
    Excluded(&'static str),
    #[error("mesh too coarse: M = {0}, at least 2 interior points per edge are required")]
    MeshTooCoarse(usize),
    #[error("edge {edge} has degenerate length {length}")]
    DegenerateEdge { edge: usize, length: f64 },
    #[error("zero pivot in the shifted factorization at shift {shift}")]
    SingularShift { shift: f64 },
    #[error("eigensolver did not converge after {iterations} restarts (max residual {residual:e})")]
    NoConvergence { iterations: usize, residual: f64 },
    #[error("index {index} out of range for length {len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("eigenvectors were not retained by the solve")]
    NoEigenvectors,
}

impl Error {
    /// True for failures of a numerical solve, as opposed to invalid input.
    pub fn is_solver_failure(&self) -> bool {
        matches!(self, Error::NoConvergence { .. } | Error::SingularShift { .. })
    }
}
