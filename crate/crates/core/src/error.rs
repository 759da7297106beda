//! Error type shared by every module of the crate.

use thiserror::Error;

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is not Hermitian (max |m - m^dag| = {deviation:.3e})")]
    NotHermitian { deviation: f64 },

    #[error("ket is not normalized (|norm - 1| = {deviation:.3e})")]
    NotNormalized { deviation: f64 },

    #[error("{name} = {value} outside {range}")]
    OutOfRange {
        name: &'static str,
        value: f64,
        range: &'static str,
    },

    #[error("invalid state label {0}: expected 1 or 2")]
    InvalidLabel(u8),

    #[error("invalid subspace index {0}")]
    InvalidSubspace(u8),

    #[error("not a valid density matrix: {0}")]
    InvalidDensityMatrix(String),

    #[error("not a valid POVM: {0}")]
    InvalidPovm(String),

    #[error(
        "unambiguity violated: Tr(rho_a E2) = {defect_a:.3e}, Tr(rho_b E1) = {defect_b:.3e}"
    )]
    UnambiguityViolated { defect_a: f64, defect_b: f64 },

    #[error("negative outcome probability {0:.3e} exceeds roundoff tolerance")]
    NegativeProbability(f64),

    #[error("outcome probabilities sum to {sum} (deviates from 1 by {deviation:.3e})")]
    BrokenOutcomeDistribution { sum: f64, deviation: f64 },
}
