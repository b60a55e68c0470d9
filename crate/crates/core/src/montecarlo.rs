//! Monte Carlo estimation of detection probability.
//!
//! Each trial deploys a fresh field of `n` sensors and walks the intruder
//! along its path; the trial succeeds if any sensor sees it. Trial `i` draws
//! all of its randomness from `derive_trial_seed(master, i)`, so the estimate
//! does not depend on how trials are split across workers.

use std::num::NonZeroUsize;
use std::thread;

use serde::Serialize;

use crate::analytic::{detection_probability, full_report, uniform_p_single};
use crate::config::ExperimentConfig;
use crate::distributions::{sample_deployment, DeploymentModel, ModelKind};
use crate::error::{DomainError, Error, SamplingError};
use crate::geometry::{check_range, detects, IntruderScenario, SensorField};
use crate::quadrature::QuadratureSpec;
use crate::rng::{derive_trial_seed, RandomSeed};

/// z for a two-sided 95% normal interval.
pub const Z_95: f64 = 1.96;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DetectionEstimate {
    pub p_hat: f64,
    pub trials: u64,
    pub detected_count: u64,
    /// Normal-approximation 95% half-width; crude when `p_hat` is near 0 or 1.
    pub ci_half_width: f64,
    pub master_seed: u64,
}

impl DetectionEstimate {
    pub fn from_counts(detected_count: u64, trials: u64, master_seed: u64) -> Self {
        let p_hat = detected_count as f64 / trials as f64;
        let ci_half_width = Z_95 * (p_hat * (1.0 - p_hat) / trials as f64).sqrt();
        DetectionEstimate { p_hat, trials, detected_count, ci_half_width, master_seed }
    }
}

/// One deployment of `n` sensors; true if at least one detects the intruder.
///
/// Sensors are drawn in order from the trial stream and the scan stops at
/// the first detection. The outcome equals drawing all `n` first.
pub fn run_trial(
    model: &DeploymentModel,
    n: u64,
    scenario: &IntruderScenario,
    r: f64,
    trial_seed: RandomSeed,
) -> Result<bool, SamplingError> {
    let mut rng = trial_seed.stream();
    for _ in 0..n {
        if detects(model.sample_point(&mut rng)?, scenario, r) {
            return Ok(true);
        }
    }
    Ok(false)
}

fn default_workers() -> usize {
    thread::available_parallelism().map(NonZeroUsize::get).unwrap_or(1)
}

/// [`estimate_detection_with_workers`] using every available core.
pub fn estimate_detection(
    model: &DeploymentModel,
    n: u64,
    scenario: &IntruderScenario,
    r: f64,
    trials: u64,
    seed: RandomSeed,
) -> Result<DetectionEstimate, Error> {
    estimate_detection_with_workers(model, n, scenario, r, trials, seed, default_workers())
}

pub fn estimate_detection_with_workers(
    model: &DeploymentModel,
    n: u64,
    scenario: &IntruderScenario,
    r: f64,
    trials: u64,
    seed: RandomSeed,
    workers: usize,
) -> Result<DetectionEstimate, Error> {
    check_range(r)?;
    if trials == 0 {
        return Err(DomainError::InvalidParameter("trials must be >= 1".into()).into());
    }
    let master = seed.master();
    let count_range = |lo: u64, hi: u64| -> Result<u64, SamplingError> {
        let mut hits = 0;
        for i in lo..hi {
            hits += u64::from(run_trial(model, n, scenario, r, RandomSeed(derive_trial_seed(master, i)))?);
        }
        Ok(hits)
    };

    let workers = (workers.max(1) as u64).min(trials);
    let detected = if workers == 1 {
        count_range(0, trials)?
    } else {
        let chunk = trials.div_ceil(workers);
        let partials: Vec<Result<u64, SamplingError>> = thread::scope(|scope| {
            let handles: Vec<_> = (0..workers)
                .map(|w| {
                    let lo = w * chunk;
                    let hi = ((w + 1) * chunk).min(trials);
                    scope.spawn(move || count_range(lo, hi))
                })
                .collect();
            handles.into_iter().map(|h| h.join().expect("trial worker panicked")).collect()
        });
        // First failing chunk in index order, so errors are deterministic too.
        partials.into_iter().sum::<Result<u64, SamplingError>>()?
    };
    Ok(DetectionEstimate::from_counts(detected, trials, master))
}

/// Detection by one fixed field drawn from `seed`.
///
/// The intruder path is deterministic, so this is a conditional indicator
/// (`p_hat` is 0 or 1). It is for exploring single deployments and is not
/// an estimate of the deployment-averaged probability.
pub fn estimate_fixed_field(
    model: &DeploymentModel,
    n: u64,
    scenario: &IntruderScenario,
    r: f64,
    seed: RandomSeed,
) -> Result<(SensorField, DetectionEstimate), Error> {
    let positions = sample_deployment(model, n as usize, seed)?;
    let field = SensorField::new(positions, r)?;
    let hit = field.detects(scenario);
    Ok((field, DetectionEstimate::from_counts(u64::from(hit), 1, seed.master())))
}

/// One computed sweep point.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub model: ModelKind,
    /// Absent for the uniform model, which has no sigma.
    pub sigma: Option<f64>,
    pub n: u64,
    pub s: f64,
    pub d: f64,
    pub r: f64,
    pub trials: u64,
    pub p_analytic: Option<f64>,
    pub p_hat: f64,
    pub ci_half_width: f64,
    pub seed: u64,
}

/// Outcome of every parameter combination, including skipped ones.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RowStatus {
    pub model: ModelKind,
    pub sigma: Option<f64>,
    pub n: u64,
    pub s: f64,
    pub d: f64,
    pub r: f64,
    pub status: String,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize)]
pub struct SweepResult {
    /// Sorted by `(model kind, N)`; ties keep enumeration order.
    pub rows: Vec<SweepRow>,
    /// One entry per combination in enumeration order.
    pub statuses: Vec<RowStatus>,
}

impl SweepResult {
    pub fn all_invalid(&self) -> bool {
        self.rows.is_empty() && !self.statuses.is_empty()
    }
}

struct Combo {
    model_index: usize,
    sigma: Option<f64>,
    n: u64,
    s: f64,
    d: f64,
    r: f64,
}

fn combinations(cfg: &ExperimentConfig) -> Vec<Combo> {
    let mut out = Vec::new();
    for (model_index, m) in cfg.models.iter().enumerate() {
        let sigmas: Vec<Option<f64>> =
            if m.uses_sigma() { cfg.sigma_values.iter().copied().map(Some).collect() } else { vec![None] };
        for &sigma in &sigmas {
            for &n in &cfg.n_values {
                for &s in &cfg.s_values {
                    for &d in &cfg.d_values {
                        for &r in &cfg.r_values {
                            out.push(Combo { model_index, sigma, n, s, d, r });
                        }
                    }
                }
            }
        }
    }
    out
}

/// Analytic detection probability where the closed model describes the
/// deployment: untruncated (or negligibly truncated) half-plane half-normal,
/// or uniform with the capsule inside the region.
fn analytic_value(
    model: &DeploymentModel,
    n: u64,
    scenario: &IntruderScenario,
    r: f64,
    spec: &QuadratureSpec,
) -> Result<Option<f64>, Error> {
    match model {
        DeploymentModel::HalfPlaneHalfNormal { params, .. } if model.truncation_negligible() => {
            Ok(Some(full_report(scenario, r, params.sigma(), n, None, spec)?.p_d))
        }
        DeploymentModel::UniformRect { region } => {
            Ok(uniform_p_single(scenario, r, region).ok().map(|p| detection_probability(p, n)))
        }
        _ => Ok(None),
    }
}

pub fn sweep(cfg: &ExperimentConfig) -> Result<SweepResult, Error> {
    sweep_with_workers(cfg, default_workers())
}

/// Runs every `(model, sigma, N, S, d, r)` combination.
///
/// Combination `k` (in model, sigma, N, S, d, r nesting order) uses the
/// seed `derive_trial_seed(master_seed, k)`. Invalid combinations are
/// recorded in `statuses` and skipped.
pub fn sweep_with_workers(cfg: &ExperimentConfig, workers: usize) -> Result<SweepResult, Error> {
    cfg.validate()?;
    let spec = QuadratureSpec::with_tolerance(cfg.quadrature_tolerance);
    let mut result = SweepResult::default();
    let mut keyed: Vec<(ModelKind, u64, SweepRow)> = Vec::new();

    for (k, c) in combinations(cfg).into_iter().enumerate() {
        let spec_model = &cfg.models[c.model_index];
        let mut status = RowStatus {
            model: spec_model.kind,
            sigma: c.sigma,
            n: c.n,
            s: c.s,
            d: c.d,
            r: c.r,
            status: "ok".into(),
            message: String::new(),
        };
        let scenario = match IntruderScenario::new(c.s, c.d) {
            Ok(sc) => sc,
            Err(e) => {
                status.status = "invalid".into();
                status.message = e.to_string();
                result.statuses.push(status);
                continue;
            }
        };
        let model = spec_model.build(c.sigma.unwrap_or(1.0), &cfg.region)?;
        let seed = derive_trial_seed(cfg.master_seed, k as u64);
        let estimate = match estimate_detection_with_workers(&model, c.n, &scenario, c.r, cfg.trials, RandomSeed(seed), workers) {
            Ok(e) => e,
            Err(e) => {
                status.status = "failed".into();
                status.message = e.to_string();
                result.statuses.push(status);
                continue;
            }
        };
        let p_analytic = match analytic_value(&model, c.n, &scenario, c.r, &spec) {
            Ok(v) => {
                if v.is_none() {
                    status.message = "no analytic value for this model and geometry".into();
                }
                v
            }
            Err(e) => {
                status.status = "numerical-failure".into();
                status.message = e.to_string();
                None
            }
        };
        keyed.push((
            spec_model.kind,
            c.n,
            SweepRow {
                model: spec_model.kind,
                sigma: c.sigma,
                n: c.n,
                s: c.s,
                d: c.d,
                r: c.r,
                trials: cfg.trials,
                p_analytic,
                p_hat: estimate.p_hat,
                ci_half_width: estimate.ci_half_width,
                seed,
            },
        ));
        result.statuses.push(status);
    }
    keyed.sort_by_key(|k| (k.0, k.1));
    result.rows = keyed.into_iter().map(|(_, _, row)| row).collect();
    Ok(result)
}
