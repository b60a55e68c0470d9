//! Intruder detection probability for sensor fields deployed with a
//! half-normal density next to a protected boundary, compared against
//! uniform deployment.
//!
//! * [`distributions`]: half-normal densities, sampling, deployment models.
//! * [`geometry`]: regions, intruder paths, capsules, Boolean sensing.
//! * [`analytic`]: quadrature of the deployment density over the capsule.
//! * [`montecarlo`]: simulated deployments, estimates and sweeps.
//! * [`cli`]: the batch front end behind the `wsn-deploy` binary.

pub mod analytic;
#[cfg(feature = "cli")]
pub mod cli;
pub mod config;
pub mod distributions;
pub mod error;
pub mod geometry;
pub mod montecarlo;
pub mod quadrature;
pub mod rng;
pub mod special;

pub use analytic::{detection_probability, full_report, DetectionReport};
pub use distributions::{DeploymentModel, HalfNormalParams, ModelKind};
pub use error::{Error, Result};
pub use geometry::{IntruderScenario, Point, Rect, Region, SensorField};
pub use montecarlo::{estimate_detection, DetectionEstimate};
pub use rng::RandomSeed;
