use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// A boost at or beyond the wave speed.
    #[error("unphysical boost: |beta| = {0} must be below 1")]
    Superluminal(f64),

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("velocity composition undefined: 1 + beta1*beta2 = 0")]
    CompositionUndefined,

    /// The inverse-r rest wave evaluated at its centre.
    #[error("field is singular at the origin in inverse-r mode")]
    Singularity,

    #[error("ray speed {ray_speed} does not exceed the centre speed {centre_speed}")]
    RaySpeedTooSlow { ray_speed: f64, centre_speed: f64 },

    #[error("no front feature found in window [{lo}, {hi}] at t = {t}")]
    FeatureNotFound { lo: f64, hi: f64, t: f64 },

    #[error("degenerate fit: {samples} samples, need at least 3")]
    DegenerateFit { samples: usize },

    #[error("no frame with |beta| < 1 equalizes the ray pair")]
    NoIsotropyFrame,

    #[error("path is not closed: endpoints differ by {gap}")]
    OpenPath { gap: f64 },

    #[error("too few samples: got {got}, need at least {need}")]
    TooFewSamples { got: usize, need: usize },

    #[error("dimensionality mismatch: {0}")]
    Dimensionality(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("non-finite field value at ({x}, {y}, {z}, {t})")]
    NonFinite { x: f64, y: f64, z: f64, t: f64 },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}: malformed file: {reason}")]
    Format { path: PathBuf, reason: String },
}

impl Error {
    pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// True for errors caused by bad input rather than by a failed computation.
    pub fn is_config(&self) -> bool {
        matches!(
            self,
            Error::Superluminal(_)
                | Error::InvalidParameter { .. }
                | Error::CompositionUndefined
                | Error::RaySpeedTooSlow { .. }
                | Error::Dimensionality(_)
                | Error::Config(_)
                | Error::Singularity
        )
    }
}
