use thiserror::Error;

/// Errors produced by state construction, operator algebra and quadrature.
#[derive(Debug, Error)]
pub enum Error {
    /// The truncation cap was reached before the coefficient tail dropped
    /// below its target.
    #[error("truncation cap N = {n_max} reached before tail target {target:.1e} was met")]
    Truncation { n_max: usize, target: f64 },

    /// `|z|` lies on or outside the convergence disk of the requested family.
    #[error("|z| = {z_abs} violates the convergence radius {radius} of this family")]
    Domain { z_abs: f64, radius: f64 },

    /// The normalization series diverges for every nonzero amplitude.
    #[error(
        "divergent normalization: series has zero radius of convergence, any z != 0 is outside"
    )]
    DivergentNormalization,

    /// A vector with (numerically) vanishing norm cannot be normalized.
    #[error("degenerate state: vanishing norm")]
    DegenerateState,

    /// Mandel Q is a 0/0 expression on the vacuum.
    #[error("Mandel Q undefined at the vacuum (mean photon number ~ 0)")]
    VacuumState,

    /// The large-n limit probe for a convergence radius did not settle.
    #[error("convergence-radius probe did not settle: {detail}")]
    NonConvergentProbe { detail: String },

    /// Adaptive quadrature could not reach the requested tolerance.
    #[error("adaptive quadrature failed to reach relative tolerance {rel_tol:.1e}")]
    QuadratureFailure { rel_tol: f64 },

    #[error("unknown nonlinearity name `{0}`")]
    UnknownName(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;
