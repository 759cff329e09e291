//! Error type shared by all modules.

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not Hermitian (max |a - a^dag| = {max_deviation:.3e})")]
    NotHermitian { max_deviation: f64 },

    #[error("eigensolver did not converge within {sweeps} sweeps")]
    NoConvergence { sweeps: usize },

    #[error("matrix contains a non-finite entry")]
    NonFinite,

    #[error("{what} = {value} outside supported range [{min}, {max}]")]
    SizeOutOfRange {
        what: &'static str,
        value: usize,
        min: usize,
        max: usize,
    },

    #[error("unknown state name `{0}`")]
    UnknownName(String),

    #[error("vector is not normalized (norm = {norm})")]
    NotNormalized { norm: f64 },

    #[error("syntax error at byte {position}: {message}")]
    SyntaxError { position: usize, message: String },

    #[error("kets of unequal length: {expected} vs {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("expression evaluates to the zero vector")]
    ZeroVector,

    #[error("bad qubit subset: {0}")]
    BadSubset(String),

    #[error("probability {0} outside [0, 1]")]
    BadProbability(f64),

    #[error("argument out of range: {0}")]
    OutOfRange(String),

    #[error("state is already PPT across the cut at d = 0")]
    NotEntangledAtZero,

    #[error("PT eigenvalue crossing near d = {d} is not monotonic")]
    NonMonotonicCrossing { d: f64 },

    #[error("mean spin vanishes; squeezing frame is undefined")]
    MeanSpinVanishes,

    #[error("axis vector is not normalized")]
    BadAxis,

    #[error("matrix is not positive semidefinite (min eigenvalue = {min_eigenvalue:.3e})")]
    NotPositiveSemidefinite { min_eigenvalue: f64 },
}
