//! Error types shared by all reduction and linear-algebra routines.

use std::error::Error;
use std::fmt;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, MorError>;

/// Errors produced by the linear-algebra kernels and reduction algorithms.
#[derive(Debug, Clone, PartialEq)]
pub enum MorError {
    /// Matrix dimensions do not conform (non-square input, mismatched sizes).
    Dimension(String),
    /// Input contains NaN or infinite entries.
    NonFinite(String),
    /// Lyapunov/Sylvester equation has no unique solution (spectra overlap).
    SingularEquation(String),
    /// Requested shift coincides with an eigenvalue of the state map.
    SingularShift(String),
    /// A factor lost column rank; carries the detected numerical rank.
    RankDeficient { rank: usize, context: String },
    /// A recovery or accumulation step is too ill-conditioned to trust.
    IllConditioned(String),
    /// Operation requires an asymptotically stable system.
    Unstable(String),
    /// Eigenvalue decomposition failed or the matrix is (numerically) defective.
    Defective(String),
    /// Interpolation data is not closed under complex conjugation.
    ConjugateClosure(String),
    /// The (S, L) pair is unobservable/uncontrollable; pole placement impossible.
    PolePlacement(String),
    /// A pseudo-optimality certificate failed; carries the offending eigenvalue.
    NotPositiveDefinite { min_eig: f64, context: String },
    /// Operation does not support the requested time interval.
    UnsupportedInterval(String),
    /// Matrix Market or config parsing failure.
    Parse { file: String, line: usize, message: String },
    /// Invalid experiment configuration.
    Config(String),
    /// Underlying I/O failure.
    Io(String),
}

impl fmt::Display for MorError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MorError::Dimension(msg) => write!(f, "dimension error: {msg}"),
            MorError::NonFinite(msg) => write!(f, "non-finite input: {msg}"),
            MorError::SingularEquation(msg) => write!(f, "singular matrix equation: {msg}"),
            MorError::SingularShift(msg) => write!(f, "singular shift: {msg}"),
            MorError::RankDeficient { rank, context } => {
                write!(f, "rank deficiency (numerical rank {rank}): {context}")
            }
            MorError::IllConditioned(msg) => write!(f, "ill-conditioned problem: {msg}"),
            MorError::Unstable(msg) => write!(f, "unstable system: {msg}"),
            MorError::Defective(msg) => write!(f, "eigenvalue decomposition error: {msg}"),
            MorError::ConjugateClosure(msg) => write!(f, "conjugate closure violated: {msg}"),
            MorError::PolePlacement(msg) => write!(f, "pole placement error: {msg}"),
            MorError::NotPositiveDefinite { min_eig, context } => {
                write!(f, "matrix not positive definite (min eigenvalue {min_eig:e}): {context}")
            }
            MorError::UnsupportedInterval(msg) => write!(f, "unsupported time interval: {msg}"),
            MorError::Parse { file, line, message } => {
                write!(f, "parse error in {file}:{line}: {message}")
            }
            MorError::Config(msg) => write!(f, "configuration error: {msg}"),
            MorError::Io(msg) => write!(f, "io error: {msg}"),
        }
    }
}

impl Error for MorError {}

impl From<std::io::Error> for MorError {
    fn from(e: std::io::Error) -> Self {
        MorError::Io(e.to_string())
    }
}
