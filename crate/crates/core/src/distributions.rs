//! Half-normal densities, moments, sampling and deployment models.
//!
//! The density used by the analytic detection model is the half-plane form
//! `x ~ HalfNormal(sigma)`, `y ~ Normal(0, sigma)`, independent:
//!
//! ```text
//! f(x, y) = exp(-(x^2 + y^2) / (2 sigma^2)) / (pi sigma^2),   x >= 0
//! ```
//!
//! The literal positive-quadrant form, `2 / (pi sigma^2) * exp(..)` on
//! `x, y >= 0`, is kept as [`DeploymentModel::QuadrantHalfNormal`].

use std::f64::consts::{FRAC_2_PI, PI, SQRT_2};

use serde::{Deserialize, Serialize};

use crate::error::{DomainError, SamplingError};
use crate::geometry::{Point, Rect, Region};
use crate::rng::{RandomSeed, SplitMix64};
use crate::special::erf;

/// Consecutive out-of-region draws tolerated per sensor before giving up.
pub const MAX_REJECTIONS: u32 = 10_000;

fn check_positive(name: &str, v: f64) -> Result<(), DomainError> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(DomainError::InvalidParameter(format!("{name} must be finite and > 0, got {v}")))
    }
}

fn check_finite(name: &'static str, v: f64) -> Result<(), DomainError> {
    if v.is_finite() {
        Ok(())
    } else {
        Err(DomainError::NonFinite(name))
    }
}

/// Half-normal distribution of `|Z|`, `Z ~ Normal(0, sigma^2)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HalfNormalParams {
    sigma: f64,
}

impl HalfNormalParams {
    pub fn new(sigma: f64) -> Result<Self, DomainError> {
        check_positive("sigma", sigma)?;
        Ok(HalfNormalParams { sigma })
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    /// `sqrt(2) / (sigma sqrt(pi)) * exp(-y^2 / (2 sigma^2))` on `y >= 0`.
    #[inline]
    pub fn pdf(&self, y: f64) -> f64 {
        if y < 0.0 {
            return 0.0;
        }
        let z = y / self.sigma;
        SQRT_2 / (self.sigma * PI.sqrt()) * (-0.5 * z * z).exp()
    }

    /// `erf(y / (sigma sqrt(2)))` on `y >= 0`.
    #[inline]
    pub fn cdf(&self, y: f64) -> f64 {
        if y <= 0.0 {
            return 0.0;
        }
        erf(y / (self.sigma * SQRT_2))
    }

    /// `sigma * sqrt(2 / pi)`.
    pub fn mean(&self) -> f64 {
        self.sigma * FRAC_2_PI.sqrt()
    }

    /// `sigma^2 (1 - 2/pi)`.
    pub fn variance(&self) -> f64 {
        self.sigma * self.sigma * (1.0 - FRAC_2_PI)
    }

    /// `|sigma * z|` for a standard normal draw `z`.
    #[inline]
    pub fn sample(&self, rng: &mut SplitMix64) -> f64 {
        (self.sigma * rng.next_standard_normal()).abs()
    }
}

pub fn half_normal_pdf(y: f64, params: &HalfNormalParams) -> Result<f64, DomainError> {
    check_finite("y", y)?;
    Ok(params.pdf(y))
}

pub fn half_normal_cdf(y: f64, params: &HalfNormalParams) -> Result<f64, DomainError> {
    check_finite("y", y)?;
    Ok(params.cdf(y))
}

pub fn half_normal_mean(params: &HalfNormalParams) -> f64 {
    params.mean()
}

pub fn half_normal_sample(rng: &mut SplitMix64, params: &HalfNormalParams) -> f64 {
    params.sample(rng)
}

/// Parameters of the correlated bivariate half-normal density.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Correlated2DParams {
    sigma1: f64,
    sigma2: f64,
    rho: f64,
}

impl Correlated2DParams {
    pub fn new(sigma1: f64, sigma2: f64, rho: f64) -> Result<Self, DomainError> {
        check_positive("sigma1", sigma1)?;
        check_positive("sigma2", sigma2)?;
        if !(rho.is_finite() && rho.abs() < 1.0) {
            return Err(DomainError::InvalidParameter(format!("|rho| must be < 1, got {rho}")));
        }
        Ok(Correlated2DParams { sigma1, sigma2, rho })
    }

    pub fn sigma1(&self) -> f64 {
        self.sigma1
    }

    pub fn sigma2(&self) -> f64 {
        self.sigma2
    }

    pub fn rho(&self) -> f64 {
        self.rho
    }
}

/// Bivariate half-normal with correlation `rho` on the closed positive
/// quadrant:
///
/// ```text
/// 2 / (pi s1 s2 sqrt(1 - rho^2))
///   * exp(-(x^2/s1^2 + y^2/s2^2) / (2 (1 - rho^2)))
///   * cosh(rho x y / ((1 - rho^2) s1 s2))
/// ```
pub fn correlated_half_normal_pdf(x: f64, y: f64, p: &Correlated2DParams) -> f64 {
    if x < 0.0 || y < 0.0 {
        return 0.0;
    }
    let one_m = 1.0 - p.rho * p.rho;
    let (u, v) = (x / p.sigma1, y / p.sigma2);
    let norm = 2.0 / (PI * p.sigma1 * p.sigma2 * one_m.sqrt());
    // exp(-q) cosh(c) = (exp(c - q) + exp(-c - q)) / 2 avoids overflow of cosh.
    let q = (u * u + v * v) / (2.0 * one_m);
    let c = p.rho * u * v / one_m;
    norm * 0.5 * ((c - q).exp() + (-c - q).exp())
}

/// Independent equal-sigma quadrant density `2/(pi sigma^2) exp(-(x^2+y^2)/(2 sigma^2))`.
pub fn quadrant_pdf(x: f64, y: f64, params: &HalfNormalParams) -> f64 {
    if x < 0.0 || y < 0.0 {
        return 0.0;
    }
    let s2 = params.sigma * params.sigma;
    2.0 / (PI * s2) * (-(x * x + y * y) / (2.0 * s2)).exp()
}

/// Half-plane deployment density `exp(-(x^2+y^2)/(2 sigma^2)) / (pi sigma^2)` on `x >= 0`.
#[inline]
pub fn halfplane_pdf(x: f64, y: f64, params: &HalfNormalParams) -> f64 {
    if x < 0.0 {
        return 0.0;
    }
    let s2 = params.sigma * params.sigma;
    (-(x * x + y * y) / (2.0 * s2)).exp() / (PI * s2)
}

/// Which spatial law sensors are drawn from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ModelKind {
    /// Uniform over the region rectangle.
    Uniform,
    /// `x ~ HalfNormal(sigma)`, `y ~ Normal(0, sigma)`.
    HalfNormal,
    /// `x ~ HalfNormal(sigma)`, `y ~ Uniform` along the strip.
    Strip,
    /// `x, y ~ HalfNormal(sigma)` independently.
    Quadrant,
}

impl ModelKind {
    pub fn name(self) -> &'static str {
        match self {
            ModelKind::Uniform => "uniform",
            ModelKind::HalfNormal => "half-normal",
            ModelKind::Strip => "strip",
            ModelKind::Quadrant => "quadrant",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        [ModelKind::Uniform, ModelKind::HalfNormal, ModelKind::Strip, ModelKind::Quadrant]
            .into_iter()
            .find(|k| k.name() == s)
    }
}

impl std::fmt::Display for ModelKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// A spatial distribution for sensor positions, with its region.
///
/// Half-normal family models on a bounded region reject and redraw
/// positions that fall outside it. The analytic formulas ignore that
/// truncation, so they only describe such a model when the region holds
/// essentially all of the mass (see [`DeploymentModel::truncation_negligible`]).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DeploymentModel {
    UniformRect { region: Rect },
    HalfPlaneHalfNormal { params: HalfNormalParams, region: Region },
    StripHalfNormal { params: HalfNormalParams, region: Rect },
    QuadrantHalfNormal { params: HalfNormalParams, region: Region },
}

impl DeploymentModel {
    pub fn uniform(region: Rect) -> Result<Self, DomainError> {
        region.validate()?;
        Ok(DeploymentModel::UniformRect { region })
    }

    /// Untruncated half-plane half-normal deployment.
    pub fn half_normal(sigma: f64) -> Result<Self, DomainError> {
        Ok(DeploymentModel::HalfPlaneHalfNormal {
            params: HalfNormalParams::new(sigma)?,
            region: Region::HalfPlane,
        })
    }

    pub fn build(kind: ModelKind, sigma: f64, region: Region) -> Result<Self, DomainError> {
        if let Region::Rectangle(r) = region {
            r.validate()?;
        }
        let rect = || {
            region.as_rect().copied().ok_or_else(|| {
                DomainError::InvalidRegion(format!("{kind} deployment needs a bounded rectangle"))
            })
        };
        Ok(match kind {
            ModelKind::Uniform => DeploymentModel::UniformRect { region: rect()? },
            ModelKind::HalfNormal => DeploymentModel::HalfPlaneHalfNormal {
                params: HalfNormalParams::new(sigma)?,
                region,
            },
            ModelKind::Strip => DeploymentModel::StripHalfNormal {
                params: HalfNormalParams::new(sigma)?,
                region: rect()?,
            },
            ModelKind::Quadrant => DeploymentModel::QuadrantHalfNormal {
                params: HalfNormalParams::new(sigma)?,
                region,
            },
        })
    }

    pub fn kind(&self) -> ModelKind {
        match self {
            DeploymentModel::UniformRect { .. } => ModelKind::Uniform,
            DeploymentModel::HalfPlaneHalfNormal { .. } => ModelKind::HalfNormal,
            DeploymentModel::StripHalfNormal { .. } => ModelKind::Strip,
            DeploymentModel::QuadrantHalfNormal { .. } => ModelKind::Quadrant,
        }
    }

    pub fn region(&self) -> Region {
        match *self {
            DeploymentModel::UniformRect { region } | DeploymentModel::StripHalfNormal { region, .. } => {
                Region::Rectangle(region)
            }
            DeploymentModel::HalfPlaneHalfNormal { region, .. }
            | DeploymentModel::QuadrantHalfNormal { region, .. } => region,
        }
    }

    pub fn sigma(&self) -> Option<f64> {
        match self {
            DeploymentModel::UniformRect { .. } => None,
            DeploymentModel::HalfPlaneHalfNormal { params, .. }
            | DeploymentModel::StripHalfNormal { params, .. }
            | DeploymentModel::QuadrantHalfNormal { params, .. } => Some(params.sigma()),
        }
    }

    /// True for the half-plane model when its region contains
    /// `[0, 6 sigma] x [-6 sigma, 6 sigma]` (or is unbounded).
    pub fn truncation_negligible(&self) -> bool {
        match self {
            DeploymentModel::HalfPlaneHalfNormal { params, region } => match region {
                Region::HalfPlane => true,
                Region::Rectangle(r) => {
                    let m = 6.0 * params.sigma();
                    r.x_min <= 0.0 && r.x_max >= m && r.y_min <= -m && r.y_max >= m
                }
            },
            _ => false,
        }
    }

    /// One position, redrawing out-of-region candidates.
    pub fn sample_point(&self, rng: &mut SplitMix64) -> Result<Point, SamplingError> {
        if let DeploymentModel::UniformRect { region } = self {
            let x = region.x_min + rng.next_f64() * region.width();
            let y = region.y_min + rng.next_f64() * region.height();
            return Ok(Point::new(x, y));
        }
        let region = self.region();
        for _ in 0..MAX_REJECTIONS {
            let p = match self {
                DeploymentModel::HalfPlaneHalfNormal { params, .. } => {
                    let x = params.sample(rng);
                    let y = params.sigma() * rng.next_standard_normal();
                    Point::new(x, y)
                }
                DeploymentModel::StripHalfNormal { params, region } => {
                    let x = params.sample(rng);
                    let y = region.y_min + rng.next_f64() * region.height();
                    Point::new(x, y)
                }
                DeploymentModel::QuadrantHalfNormal { params, .. } => {
                    let x = params.sample(rng);
                    let y = params.sample(rng);
                    Point::new(x, y)
                }
                DeploymentModel::UniformRect { .. } => unreachable!(),
            };
            if region.contains(p) {
                return Ok(p);
            }
        }
        Err(SamplingError::RejectionLimit { attempts: MAX_REJECTIONS })
    }
}

/// `n` independent positions from `model`, drawn in order from one stream.
pub fn sample_deployment(
    model: &DeploymentModel,
    n: usize,
    seed: RandomSeed,
) -> Result<Vec<Point>, SamplingError> {
    let mut rng = seed.stream();
    (0..n).map(|_| model.sample_point(&mut rng)).collect()
}

/// Test functions for the half-normal Stein identity
/// `E[f'(X)] = E[X f(X)] - f(0) sqrt(2/pi)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SteinFunction {
    /// `f(x) = 1`
    Constant,
    /// `f(x) = x`
    Identity,
    /// `f(x) = x^2`
    Square,
}

impl SteinFunction {
    /// `f'(z) - z f(z) + f(0) sqrt(2/pi)`, whose mean vanishes under HalfNormal(1).
    fn summand(self, z: f64) -> f64 {
        match self {
            SteinFunction::Constant => -z + FRAC_2_PI.sqrt(),
            SteinFunction::Identity => 1.0 - z * z,
            SteinFunction::Square => 2.0 * z - z * z * z,
        }
    }
}

/// Empirical Stein residual with its standard error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SteinStatistic {
    pub residual: f64,
    pub std_error: f64,
    pub count: usize,
}

impl SteinStatistic {
    /// Residual in units of its standard error.
    pub fn z_score(&self) -> f64 {
        if self.std_error == 0.0 {
            if self.residual == 0.0 { 0.0 } else { f64::INFINITY }
        } else {
            self.residual / self.std_error
        }
    }
}

/// Mean of the Stein summand over `samples / sigma`, plus its standard error.
///
/// The identity holds for HalfNormal(1); samples are rescaled by `1/sigma`
/// to apply it to other scales.
pub fn stein_statistic(
    f: SteinFunction,
    samples: &[f64],
    params: &HalfNormalParams,
) -> Result<SteinStatistic, DomainError> {
    if samples.is_empty() {
        return Err(DomainError::EmptySamples);
    }
    if let Some(bad) = samples.iter().find(|s| !(s.is_finite() && **s >= 0.0)) {
        return Err(DomainError::InvalidParameter(format!(
            "Stein samples must be finite and >= 0, got {bad}"
        )));
    }
    let n = samples.len() as f64;
    let inv = 1.0 / params.sigma();
    let (mut sum, mut sum_sq) = (0.0, 0.0);
    for &s in samples {
        let t = f.summand(s * inv);
        sum += t;
        sum_sq += t * t;
    }
    let mean = sum / n;
    let var = if samples.len() > 1 { ((sum_sq - n * mean * mean) / (n - 1.0)).max(0.0) } else { 0.0 };
    Ok(SteinStatistic { residual: mean, std_error: (var / n).sqrt(), count: samples.len() })
}

pub fn stein_residual(
    f: SteinFunction,
    samples: &[f64],
    params: &HalfNormalParams,
) -> Result<f64, DomainError> {
    stein_statistic(f, samples, params).map(|s| s.residual)
}

/// Kolmogorov–Smirnov distance between the empirical CDF of `samples` and `cdf`.
pub fn ks_distance(samples: &[f64], cdf: impl Fn(f64) -> f64) -> f64 {
    let mut sorted = samples.to_vec();
    sorted.sort_by(f64::total_cmp);
    let n = sorted.len() as f64;
    sorted
        .iter()
        .enumerate()
        .map(|(i, &x)| {
            let f = cdf(x);
            (f - i as f64 / n).abs().max(((i + 1) as f64 / n - f).abs())
        })
        .fold(0.0, f64::max)
}

/// Asymptotic one-sample KS critical value at significance 0.01.
pub fn ks_critical_001(n: usize) -> f64 {
    1.628 / (n as f64).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hn(s: f64) -> HalfNormalParams {
        HalfNormalParams::new(s).unwrap()
    }

    /// Composite Simpson, test-only oracle.
    fn simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, n: usize) -> f64 {
        let h = (b - a) / n as f64;
        let mut s = f(a) + f(b);
        for i in 1..n {
            s += if i % 2 == 1 { 4.0 } else { 2.0 } * f(a + i as f64 * h);
        }
        s * h / 3.0
    }

    #[test]
    fn pdf_examples() {
        assert!((half_normal_pdf(0.0, &hn(1.0)).unwrap() - 0.797_884_560_802_865).abs() < 1e-12);
        assert!((half_normal_pdf(1.0, &hn(1.0)).unwrap() - 0.483_941_449_038_287).abs() < 1e-12);
        assert_eq!(half_normal_pdf(-1.0, &hn(1.0)).unwrap(), 0.0);
        assert!(half_normal_pdf(f64::NAN, &hn(1.0)).is_err());
        assert!(half_normal_pdf(f64::INFINITY, &hn(1.0)).is_err());
    }

    #[test]
    fn pdf_matches_numerical_derivative_of_cdf() {
        let p = hn(1.0);
        let h = 1e-5;
        let d = (p.cdf(1.0 + h) - p.cdf(1.0 - h)) / (2.0 * h);
        assert!((d - p.pdf(1.0)).abs() < 1e-8);
    }

    #[test]
    fn cdf_examples() {
        assert_eq!(half_normal_cdf(0.0, &hn(1.0)).unwrap(), 0.0);
        assert_eq!(half_normal_cdf(-3.0, &hn(1.0)).unwrap(), 0.0);
        let c1 = half_normal_cdf(1.0, &hn(1.0)).unwrap();
        assert!((c1 - 0.682_689_492_137_086).abs() < 1e-10);
        assert!((c1 - simpson(|y| hn(1.0).pdf(y), 0.0, 1.0, 2000)).abs() < 1e-10);
        assert!((half_normal_cdf(20.0, &hn(2.0)).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn cdf_equals_pdf_quadrature_on_grid() {
        for &s in &[0.5, 1.0, 5.0] {
            let p = hn(s);
            for i in 1..=20 {
                let y = i as f64 * 0.3 * s;
                let q = simpson(|t| p.pdf(t), 0.0, y, 4000);
                assert!((p.cdf(y) - q).abs() < 1e-7, "sigma {s} y {y}");
            }
        }
    }

    #[test]
    fn mean_examples() {
        assert!((half_normal_mean(&hn(1.0)) - 0.797_884_560_8).abs() < 1e-10);
        assert!((half_normal_mean(&hn(2.0)) - 1.595_769_121_6).abs() < 1e-10);
        assert!((hn(3.5).mean() - 3.5 * hn(1.0).mean()).abs() < 1e-14);
    }

    #[test]
    fn params_reject_bad_sigma() {
        assert!(HalfNormalParams::new(0.0).is_err());
        assert!(HalfNormalParams::new(-1.0).is_err());
        assert!(HalfNormalParams::new(f64::NAN).is_err());
        assert!(Correlated2DParams::new(1.0, 1.0, 1.0).is_err());
        assert!(Correlated2DParams::new(1.0, 0.0, 0.0).is_err());
    }

    #[test]
    fn correlated_examples() {
        let p = Correlated2DParams::new(1.0, 1.0, 0.0).unwrap();
        assert!((correlated_half_normal_pdf(0.0, 0.0, &p) - 2.0 / PI).abs() < 1e-15);
        let q = Correlated2DParams::new(1.0, 2.0, 0.5).unwrap();
        assert_eq!(correlated_half_normal_pdf(-0.5, 1.0, &q), 0.0);
        assert_eq!(correlated_half_normal_pdf(1.0, -0.5, &q), 0.0);
    }

    #[test]
    fn halfplane_examples() {
        let p = hn(1.0);
        assert!((halfplane_pdf(0.0, 0.0, &p) - 1.0 / PI).abs() < 1e-15);
        assert_eq!(halfplane_pdf(1.0, 0.5, &p), halfplane_pdf(1.0, -0.5, &p));
        assert_eq!(halfplane_pdf(-1.0, 0.0, &p), 0.0);
        // product of the two marginals
        let normal = |y: f64| (-(y * y) / 2.0).exp() / (2.0 * PI).sqrt();
        assert!((halfplane_pdf(0.7, -1.3, &p) - p.pdf(0.7) * normal(-1.3)).abs() < 1e-15);
    }

    #[test]
    fn samples_are_nonnegative_and_deterministic() {
        let p = hn(2.0);
        let mut a = SplitMix64::new(5);
        let mut b = SplitMix64::new(5);
        for _ in 0..1000 {
            let v = p.sample(&mut a);
            assert!(v >= 0.0);
            assert_eq!(v, half_normal_sample(&mut b, &p));
        }
    }

    #[test]
    fn sample_deployment_examples() {
        let rect = Rect::new(0.0, 100.0, 0.0, 100.0).unwrap();
        let m = DeploymentModel::uniform(rect).unwrap();
        assert!(sample_deployment(&m, 0, RandomSeed(1)).unwrap().is_empty());
        let pts = sample_deployment(&m, 5000, RandomSeed(1)).unwrap();
        assert_eq!(pts.len(), 5000);
        assert!(pts.iter().all(|&p| rect.contains(p)));

        let hp = DeploymentModel::half_normal(5.0).unwrap();
        let n = 100_000;
        let pts = sample_deployment(&hp, n, RandomSeed(2)).unwrap();
        assert!(pts.iter().all(|p| p.x >= 0.0));
        let mean_x = pts.iter().map(|p| p.x).sum::<f64>() / n as f64;
        let se = hn(5.0).variance().sqrt() / (n as f64).sqrt();
        assert!((mean_x - 3.989_422_804).abs() < 5.0 * se, "{mean_x}");
        assert_eq!(pts, sample_deployment(&hp, n, RandomSeed(2)).unwrap());
    }

    #[test]
    fn bounded_models_stay_inside() {
        let rect = Rect::new(0.0, 20.0, -10.0, 10.0).unwrap();
        for kind in [ModelKind::HalfNormal, ModelKind::Strip, ModelKind::Quadrant] {
            let m = DeploymentModel::build(kind, 8.0, Region::Rectangle(rect)).unwrap();
            let pts = sample_deployment(&m, 2000, RandomSeed(3)).unwrap();
            assert!(pts.iter().all(|&p| rect.contains(p)), "{kind}");
        }
    }

    #[test]
    fn rejection_limit_when_region_misses_the_mass() {
        let far = Rect::new(1000.0, 1001.0, 0.0, 1.0).unwrap();
        let m = DeploymentModel::build(ModelKind::HalfNormal, 1.0, Region::Rectangle(far)).unwrap();
        assert_eq!(
            sample_deployment(&m, 1, RandomSeed(0)),
            Err(SamplingError::RejectionLimit { attempts: MAX_REJECTIONS })
        );
    }

    #[test]
    fn strip_and_uniform_need_rectangles() {
        assert!(DeploymentModel::build(ModelKind::Strip, 1.0, Region::HalfPlane).is_err());
        assert!(DeploymentModel::build(ModelKind::Uniform, 1.0, Region::HalfPlane).is_err());
    }

    #[test]
    fn truncation_check() {
        assert!(DeploymentModel::half_normal(3.0).unwrap().truncation_negligible());
        let wide = Region::Rectangle(Rect::new(0.0, 100.0, -50.0, 50.0).unwrap());
        assert!(DeploymentModel::build(ModelKind::HalfNormal, 5.0, wide).unwrap().truncation_negligible());
        assert!(!DeploymentModel::build(ModelKind::HalfNormal, 10.0, wide).unwrap().truncation_negligible());
    }

    #[test]
    fn model_names_round_trip() {
        for k in [ModelKind::Uniform, ModelKind::HalfNormal, ModelKind::Strip, ModelKind::Quadrant] {
            assert_eq!(ModelKind::parse(k.name()), Some(k));
        }
        assert_eq!(ModelKind::parse("gaussian"), None);
    }

    #[test]
    fn stein_constant_cancels_analytically() {
        // f = 1: summand is sqrt(2/pi) - z, whose mean is zero under HalfNormal(1).
        let p = hn(1.0);
        let mut rng = SplitMix64::new(11);
        let s: Vec<f64> = (0..200_000).map(|_| p.sample(&mut rng)).collect();
        let st = stein_statistic(SteinFunction::Constant, &s, &p).unwrap();
        assert!(st.z_score().abs() < 5.0, "{st:?}");
    }

    #[test]
    fn stein_square_and_rescaling() {
        let p = hn(4.0);
        let mut rng = SplitMix64::new(12);
        let s: Vec<f64> = (0..200_000).map(|_| p.sample(&mut rng)).collect();
        for f in [SteinFunction::Identity, SteinFunction::Square] {
            let st = stein_statistic(f, &s, &p).unwrap();
            assert!(st.z_score().abs() < 5.0, "{f:?} {st:?}");
        }
    }

    #[test]
    fn stein_negative_control_uniform() {
        // E[1 - U^2] = 2/3 for U ~ Uniform(0, 1).
        let mut rng = SplitMix64::new(13);
        let s: Vec<f64> = (0..100_000).map(|_| rng.next_f64()).collect();
        let st = stein_statistic(SteinFunction::Identity, &s, &hn(1.0)).unwrap();
        assert!((st.residual - 2.0 / 3.0).abs() < 0.01);
        assert!(st.z_score() > 5.0);
    }

    #[test]
    fn ks_accepts_half_normal_and_rejects_uniform() {
        let p = hn(1.0);
        let mut rng = SplitMix64::new(14);
        let s: Vec<f64> = (0..10_000).map(|_| p.sample(&mut rng)).collect();
        assert!(ks_distance(&s, |y| p.cdf(y)) < ks_critical_001(s.len()));
        let u: Vec<f64> = (0..10_000).map(|_| 2.0 * rng.next_f64()).collect();
        assert!(ks_distance(&u, |y| p.cdf(y)) > ks_critical_001(u.len()));
    }

    #[test]
    fn stein_errors() {
        assert_eq!(stein_residual(SteinFunction::Identity, &[], &hn(1.0)), Err(DomainError::EmptySamples));
        assert!(stein_residual(SteinFunction::Identity, &[-1.0], &hn(1.0)).is_err());
    }
}
