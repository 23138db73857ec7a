use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("series not converged after {terms} terms (partial value {partial:e})")]
    SeriesNotConverged { partial: f64, terms: usize },

    #[error("series overflowed after {terms} terms")]
    SeriesOverflow { terms: usize },

    #[error("contour quadrature inconsistent: imaginary residue {imag:e}")]
    ContourInconsistent { imag: f64 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid series policy: {0}")]
    InvalidPolicy(String),

    #[error("invalid metric profile '{name}': {reason}")]
    InvalidProfile { name: String, reason: String },

    #[error("unknown surface '{0}'")]
    UnknownSurface(String),

    #[error("invalid configuration: {0}")]
    InvalidConfiguration(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("path leaves the chart domain in segment {segment} (x = {x})")]
    SegmentOutOfDomain { segment: usize, x: f64 },

    #[error("point not influenced at time {t}: first-direction budget {budget} outside [0, t]")]
    NotInfluenced { t: f64, budget: f64 },

    #[error("quadrature tolerance not reached: estimate {estimate:e}, error {error:e}")]
    QuadratureTolerance { estimate: f64, error: f64 },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
