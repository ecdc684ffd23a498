//! Error type shared by the solver entry points.

use thiserror::Error;

/// Errors reported by constructors and solver entry points.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum SolveError {
    /// An input scalar was NaN or infinite.
    #[error("non-finite input in {0}")]
    NonFinite(&'static str),

    /// `B` is numerically singular; the generic (quartic) path does not
    /// apply. Callers should go through [`crate::dispatch::solve`], which
    /// routes singular systems to the rank-0/rank-1 solvers.
    #[error("matrix B is numerically singular (|det B| = {det:.3e} <= {threshold:.3e}); use the singular solver path")]
    SingularB { det: f64, threshold: f64 },

    /// A tolerance value was zero, negative, or non-finite.
    #[error("invalid tolerance: {0} must be strictly positive and finite")]
    InvalidTolerance(&'static str),

    /// Link lengths of a two-link arm must be strictly positive.
    #[error("invalid arm geometry: {0}")]
    InvalidArm(&'static str),
}
