//! Error type shared across the crate.

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    /// A physical parameter violates its domain (negative rate, zero decay, ...).
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    /// The response denominator collapsed; only reachable with all of γ, κ, g zero.
    #[error("degenerate device parameters: response denominator vanished")]
    DegenerateParameters,

    /// An amplitude-level operation received an incoherent mixture.
    #[error(
        "statistical mixtures carry no single reflection amplitude; combine intensities instead"
    )]
    MixtureNotCoherent,

    /// Spectral-diffusion density requested with zero inhomogeneous width.
    #[error("inhomogeneous width is zero: the diffusion density is a delta; bypass the average")]
    DegenerateWidth,

    /// Mixture weight outside [0, 1].
    #[error("mixture weight {alpha} outside [0, 1]")]
    MixtureWeightOutOfRange { alpha: f64 },

    /// Probability denominator indistinguishable from zero.
    #[error("degenerate intensity contrast: |denominator| below 1e-12 of the intensity scale")]
    DegenerateContrast,

    /// Transient integrator step size too coarse for the fastest rate.
    #[error("time step {dt} exceeds stability bound {max_dt}")]
    StepSizeTooLarge { dt: f64, max_dt: f64 },

    /// Spectrum construction with a malformed grid or negative/non-finite values.
    #[error("invalid spectrum: {0}")]
    InvalidSpectrum(String),

    /// Frequency grid not strictly increasing or empty.
    #[error("invalid frequency grid: {0}")]
    InvalidGrid(String),

    /// Least-squares normal matrix is singular along the named directions.
    #[error("parameters not identifiable from the data: {params:?}")]
    NonIdentifiable { params: Vec<String> },

    /// A fit problem that cannot be set up (bounds, initial values, sizes).
    #[error("invalid fit problem: {0}")]
    InvalidFitProblem(String),
}
