//! Detection probability by numerical integration of the deployment density
//! over the intruder's capsule.
//!
//! The capsule around the path from `(S, 0)` to `(S - d, 0)` is split into
//!
//! * a rectangle `x in [S - d, S]`, `y in [-r, r]`,
//! * a left half-disk centered at `(S - d, 0)`, `x in [S - d - r, S - d]`,
//! * a right half-disk centered at `(S, 0)`, `x in [S, S + r]`,
//!
//! and the density is integrated over each piece. With one sensor landing in
//! the capsule with probability `p`, `N` independent sensors miss the
//! intruder with probability `(1 - p)^N`.

use serde::Serialize;

use crate::distributions::{halfplane_pdf, HalfNormalParams};
use crate::error::{DomainError, Error};
use crate::geometry::{capsule_area, check_range, IntruderScenario, Rect};
use crate::quadrature::{integrate_2d, QuadratureSpec};
use crate::special::erf;

pub use crate::special::erf as erf_approx;

/// A deployment density for the capsule integrals.
pub trait Density {
    fn value(&self, x: f64, y: f64) -> f64;

    /// The density vanishes for `x` below this; integrals are clipped there.
    fn support_x_min(&self) -> f64 {
        f64::NEG_INFINITY
    }
}

/// Half-plane half-normal density: `x ~ HalfNormal(sigma)`, `y ~ Normal(0, sigma)`.
#[derive(Debug, Clone, Copy)]
pub struct HalfPlaneDensity(pub HalfNormalParams);

impl Density for HalfPlaneDensity {
    #[inline]
    fn value(&self, x: f64, y: f64) -> f64 {
        halfplane_pdf(x, y, &self.0)
    }

    fn support_x_min(&self) -> f64 {
        0.0
    }
}

/// Constant density, for checking the integration domain against the area formula.
#[derive(Debug, Clone, Copy)]
pub struct ConstantDensity(pub f64);

impl Density for ConstantDensity {
    fn value(&self, _x: f64, _y: f64) -> f64 {
        self.0
    }
}

/// Mass of a density over the three pieces of the capsule.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CapsuleMass {
    pub rect: f64,
    pub left: f64,
    pub right: f64,
}

impl CapsuleMass {
    pub fn total(&self) -> f64 {
        self.rect + self.left + self.right
    }
}

fn half_disk_bounds(center: f64, r: f64) -> impl Fn(f64) -> (f64, f64) {
    move |x| {
        let dx = x - center;
        let h = (r * r - dx * dx).max(0.0).sqrt();
        (-h, h)
    }
}

fn rect_mass<D: Density>(s: &IntruderScenario, r: f64, density: &D, spec: &QuadratureSpec) -> Result<f64, Error> {
    let lo = (s.start_s() - s.distance_d()).max(density.support_x_min());
    let hi = s.start_s();
    if hi <= lo {
        return Ok(0.0);
    }
    Ok(integrate_2d(|x, y| density.value(x, y), (lo, hi), |_| (-r, r), spec)?.value)
}

fn left_mass<D: Density>(s: &IntruderScenario, r: f64, density: &D, spec: &QuadratureSpec) -> Result<f64, Error> {
    let c = s.start_s() - s.distance_d();
    let lo = (c - r).max(density.support_x_min());
    if c <= lo {
        return Ok(0.0);
    }
    Ok(integrate_2d(|x, y| density.value(x, y), (lo, c), half_disk_bounds(c, r), spec)?.value)
}

fn right_mass<D: Density>(s: &IntruderScenario, r: f64, density: &D, spec: &QuadratureSpec) -> Result<f64, Error> {
    let c = s.start_s();
    let lo = c.max(density.support_x_min());
    let hi = c + r;
    if hi <= lo {
        return Ok(0.0);
    }
    Ok(integrate_2d(|x, y| density.value(x, y), (lo, hi), half_disk_bounds(c, r), spec)?.value)
}

/// Integrates `density` over the rectangle and both half-disks.
pub fn capsule_mass<D: Density>(
    scenario: &IntruderScenario,
    r: f64,
    density: &D,
    spec: &QuadratureSpec,
) -> Result<CapsuleMass, Error> {
    check_range(r)?;
    spec.validate()?;
    Ok(CapsuleMass {
        rect: rect_mass(scenario, r, density, spec)?,
        left: left_mass(scenario, r, density, spec)?,
        right: right_mass(scenario, r, density, spec)?,
    })
}

fn density(sigma: f64, r: f64, spec: &QuadratureSpec) -> Result<HalfPlaneDensity, Error> {
    check_range(r)?;
    spec.validate()?;
    Ok(HalfPlaneDensity(HalfNormalParams::new(sigma)?))
}

/// Probability that one half-plane sensor lies in the path rectangle.
pub fn p_rect(scenario: &IntruderScenario, r: f64, sigma: f64, spec: &QuadratureSpec) -> Result<f64, Error> {
    rect_mass(scenario, r, &density(sigma, r, spec)?, spec)
}

/// Probability that one sensor lies in the half-disk around the end point `(S - d, 0)`.
pub fn p_left_disk(scenario: &IntruderScenario, r: f64, sigma: f64, spec: &QuadratureSpec) -> Result<f64, Error> {
    left_mass(scenario, r, &density(sigma, r, spec)?, spec)
}

/// Probability that one sensor lies in the half-disk around the entry point `(S, 0)`.
pub fn p_right_disk(scenario: &IntruderScenario, r: f64, sigma: f64, spec: &QuadratureSpec) -> Result<f64, Error> {
    right_mass(scenario, r, &density(sigma, r, spec)?, spec)
}

pub fn p_total(scenario: &IntruderScenario, r: f64, sigma: f64, spec: &QuadratureSpec) -> Result<f64, Error> {
    let d = density(sigma, r, spec)?;
    Ok(capsule_mass(scenario, r, &d, spec)?.total().min(1.0))
}

/// Closed form of [`p_rect`]: the density factors into a half-normal in `x`
/// and a normal in `y`, so the rectangle mass is
/// `[F(S) - F(S - d)] * erf(r / (sigma sqrt 2))`.
pub fn p_rect_separable(scenario: &IntruderScenario, r: f64, sigma: f64) -> Result<f64, Error> {
    check_range(r)?;
    let p = HalfNormalParams::new(sigma)?;
    let fx = p.cdf(scenario.start_s()) - p.cdf(scenario.start_s() - scenario.distance_d());
    Ok(fx * erf(r / (sigma * std::f64::consts::SQRT_2)))
}

/// `(1 - p)^n`, computed as `exp(n * ln(1 - p))` to keep precision for tiny `p`.
pub fn not_detected_probability(p_single: f64, n: u64) -> f64 {
    let p = p_single.clamp(0.0, 1.0);
    if n == 0 {
        1.0
    } else if p == 1.0 {
        0.0
    } else {
        (n as f64 * (-p).ln_1p()).exp()
    }
}

/// At least one of `n` independent sensors detects: `1 - (1 - p)^n`,
/// computed as `-expm1(n * ln(1 - p))`.
pub fn detection_probability(p_single: f64, n: u64) -> f64 {
    let p = p_single.clamp(0.0, 1.0);
    match n {
        0 => 0.0,
        1 => p,
        _ if p == 1.0 => 1.0,
        _ => -(n as f64 * (-p).ln_1p()).exp_m1(),
    }
}

/// Single-sensor detection probability for uniform deployment: capsule area
/// over region area. The capsule must lie inside the region.
pub fn uniform_p_single(scenario: &IntruderScenario, r: f64, region: &Rect) -> Result<f64, DomainError> {
    check_range(r)?;
    region.validate()?;
    let capsule = scenario.capsule(r);
    let bounds = capsule.bounds();
    if !region.contains_rect(&bounds) {
        return Err(DomainError::CapsuleOutsideRegion {
            capsule: format!("{bounds:?}"),
            region: format!("{region:?}"),
        });
    }
    Ok(capsule_area(scenario.distance_d(), r) / region.area())
}

/// Every analytic quantity for one scenario.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DetectionReport {
    pub p_rect: f64,
    pub p_left: f64,
    pub p_right: f64,
    pub p_total: f64,
    /// Uniform-deployment single-sensor probability, when a region is given
    /// and contains the capsule.
    #[serde(rename = "p_uniform")]
    pub p_single_uniform: Option<f64>,
    pub p_d: f64,
    pub p_not_detected: f64,
    /// Uniform-deployment detection probability for the same `n`.
    pub p_d_uniform: Option<f64>,
    pub n_sensors: u64,
}

pub fn full_report(
    scenario: &IntruderScenario,
    r: f64,
    sigma: f64,
    n: u64,
    region: Option<&Rect>,
    spec: &QuadratureSpec,
) -> Result<DetectionReport, Error> {
    let d = density(sigma, r, spec)?;
    let mass = capsule_mass(scenario, r, &d, spec)?;
    let p_total = mass.total().min(1.0);
    let p_single_uniform = match region {
        Some(rect) => {
            rect.validate()?;
            uniform_p_single(scenario, r, rect).ok()
        }
        None => None,
    };
    Ok(DetectionReport {
        p_rect: mass.rect,
        p_left: mass.left,
        p_right: mass.right,
        p_total,
        p_single_uniform,
        p_d: detection_probability(p_total, n),
        p_not_detected: not_detected_probability(p_total, n),
        p_d_uniform: p_single_uniform.map(|p| detection_probability(p, n)),
        n_sensors: n,
    })
}
