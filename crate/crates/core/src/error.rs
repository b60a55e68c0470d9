use thiserror::Error;

/// Out-of-domain input, rejected before any computation.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum DomainError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("invalid region: {0}")]
    InvalidRegion(String),
    #[error("invalid scenario: {0}")]
    InvalidScenario(String),
    #[error("non-finite input: {0}")]
    NonFinite(&'static str),
    #[error("empty sample set")]
    EmptySamples,
    #[error("capsule {capsule} is not contained in region {region}")]
    CapsuleOutsideRegion { capsule: String, region: String },
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SamplingError {
    /// Too many consecutive draws fell outside the bounded region; the
    /// spread of the distribution is badly mismatched to the region.
    #[error("rejection sampling gave up after {attempts} consecutive draws outside the region")]
    RejectionLimit { attempts: u32 },
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum QuadratureError {
    #[error(
        "quadrature did not reach tolerance {tolerance:e} within {max_subdivisions} subdivisions \
         (best estimate {estimate}, error bound {error_bound:e})"
    )]
    NotConverged {
        estimate: f64,
        error_bound: f64,
        tolerance: f64,
        max_subdivisions: usize,
    },
    #[error("integrand is not finite at ({x}, {y})")]
    NonFiniteIntegrand { x: f64, y: f64 },
    #[error("invalid quadrature input: {0}")]
    InvalidInput(String),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error(transparent)]
    Domain(#[from] DomainError),
    #[error(transparent)]
    Sampling(#[from] SamplingError),
    #[error(transparent)]
    Quadrature(#[from] QuadratureError),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
