//! Built-in invariant suite run by `wsn-deploy validate`.
//!
//! Trial counts are reduced so the whole suite finishes in seconds.

use std::f64::consts::PI;

use crate::analytic::{detection_probability, full_report, p_rect, p_rect_separable};
use crate::distributions::{
    correlated_half_normal_pdf, halfplane_pdf, ks_critical_001, ks_distance, quadrant_pdf, stein_statistic,
    Correlated2DParams, DeploymentModel, HalfNormalParams, SteinFunction,
};
use crate::geometry::{capsule_area, IntruderScenario, Rect};
use crate::montecarlo::{estimate_detection_with_workers, DetectionEstimate};
use crate::quadrature::{integrate_1d, integrate_2d, QuadratureSpec};
use crate::rng::{RandomSeed, SplitMix64};

/// Fault injection for exercising the suite itself.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ValidationHooks {
    /// Multiplies the half-normal normalizing constant in the normalization check.
    pub normalizer_scale: f64,
}

impl Default for ValidationHooks {
    fn default() -> Self {
        ValidationHooks { normalizer_scale: 1.0 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ValidationReport {
    pub checks: Vec<Check>,
}

impl ValidationReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    fn push(&mut self, name: &'static str, passed: bool, detail: String) {
        self.checks.push(Check { name, passed, detail });
    }
}

const TRIALS: u64 = 200_000;

fn hn(sigma: f64) -> HalfNormalParams {
    HalfNormalParams::new(sigma).expect("positive sigma")
}

fn check_normalization(report: &mut ValidationReport, hooks: &ValidationHooks) {
    let spec = QuadratureSpec::with_tolerance(1e-10);
    let mut worst: f64 = 0.0;
    let mut ok = true;
    for sigma in [0.5, 1.0, 5.0, 20.0] {
        let p = hn(sigma);
        match integrate_1d(|y| hooks.normalizer_scale * p.pdf(y), 0.0, 12.0 * sigma, &spec) {
            Ok(e) => worst = worst.max((e.value - 1.0).abs()),
            Err(_) => ok = false,
        }
    }
    report.push("half-normal pdf integrates to 1", ok && worst <= 1e-6, format!("max |integral - 1| = {worst:.3e}"));
}

fn check_cdf(report: &mut ValidationReport) {
    let spec = QuadratureSpec::with_tolerance(1e-11);
    let mut worst: f64 = 0.0;
    for sigma in [0.5, 1.0, 5.0] {
        let p = hn(sigma);
        for i in 1..=12 {
            let y = 0.5 * i as f64 * sigma;
            let q = integrate_1d(|t| p.pdf(t), 0.0, y, &spec).map(|e| e.value).unwrap_or(f64::NAN);
            worst = worst.max((p.cdf(y) - q).abs());
        }
    }
    report.push("cdf equals integral of pdf", worst <= 1e-7, format!("max deviation {worst:.3e}"));
}

fn check_bivariate(report: &mut ValidationReport) {
    let spec = QuadratureSpec::with_tolerance(1e-7);
    let mut worst: f64 = 0.0;
    for (s1, s2, rho) in [(1.0, 1.0, 0.0), (1.0, 2.0, 0.5), (2.0, 1.0, -0.5)] {
        let p = Correlated2DParams::new(s1, s2, rho).expect("valid params");
        let v = integrate_2d(
            |x, y| correlated_half_normal_pdf(x, y, &p),
            (0.0, 12.0 * s1),
            |_| (0.0, 12.0 * s2),
            &spec,
        )
        .map(|e| e.value)
        .unwrap_or(f64::NAN);
        worst = worst.max((v - 1.0).abs());
    }
    report.push("correlated density integrates to 1", worst <= 1e-4, format!("max |integral - 1| = {worst:.3e}"));

    let p0 = Correlated2DParams::new(1.5, 1.5, 0.0).expect("valid params");
    let q = hn(1.5);
    let mut dev: f64 = 0.0;
    for i in 0..10 {
        for j in 0..10 {
            let (x, y) = (0.4 * i as f64, 0.4 * j as f64);
            dev = dev.max((correlated_half_normal_pdf(x, y, &p0) - quadrant_pdf(x, y, &q)).abs());
        }
    }
    report.push("rho = 0 reduces to the product form", dev <= 1e-12, format!("max deviation {dev:.3e}"));

    let h = hn(1.0);
    let v = integrate_2d(|x, y| halfplane_pdf(x, y, &h), (0.0, 12.0), |_| (-12.0, 12.0), &spec)
        .map(|e| e.value)
        .unwrap_or(f64::NAN);
    report.push("half-plane density integrates to 1", (v - 1.0).abs() <= 1e-4, format!("integral {v:.10}"));
}

fn check_sampler(report: &mut ValidationReport) {
    let p = hn(1.0);
    let mut rng = SplitMix64::new(0x5EED);
    let n = 200_000;
    let samples: Vec<f64> = (0..n).map(|_| p.sample(&mut rng)).collect();
    let mean = samples.iter().sum::<f64>() / n as f64;
    let se = p.variance().sqrt() / (n as f64).sqrt();
    report.push(
        "sample mean matches sigma sqrt(2/pi)",
        (mean - p.mean()).abs() <= 5.0 * se,
        format!("mean {mean:.6}, expected {:.6}, 5 SE = {:.2e}", p.mean(), 5.0 * se),
    );

    let ks = ks_distance(&samples[..10_000], |y| p.cdf(y));
    let crit = ks_critical_001(10_000);
    report.push("KS distance below 1% critical value", ks < crit, format!("D = {ks:.5}, critical {crit:.5}"));

    match stein_statistic(SteinFunction::Identity, &samples, &p) {
        Ok(st) => report.push(
            "Stein residual vanishes for half-normal samples",
            st.z_score().abs() <= 5.0,
            format!("residual {:.2e}, z = {:.2}", st.residual, st.z_score()),
        ),
        Err(e) => report.push("Stein residual vanishes for half-normal samples", false, e.to_string()),
    }
    let uniform: Vec<f64> = (0..n).map(|_| rng.next_f64()).collect();
    match stein_statistic(SteinFunction::Identity, &uniform, &p) {
        Ok(st) => report.push(
            "Stein residual detects uniform samples",
            st.z_score().abs() > 5.0,
            format!("residual {:.4}, z = {:.1}", st.residual, st.z_score()),
        ),
        Err(e) => report.push("Stein residual detects uniform samples", false, e.to_string()),
    }
}

fn check_closed_forms(report: &mut ValidationReport) {
    let dp = detection_probability(0.1, 10);
    report.push(
        "detection probability 1 - 0.9^10",
        (dp - 0.651_321_559_9).abs() <= 1e-9,
        format!("{dp:.10}"),
    );
    let a = capsule_area(2.0, 1.0);
    report.push("capsule area 4 + pi", (a - (4.0 + PI)).abs() <= 1e-12, format!("{a:.12}"));

    let sc = IntruderScenario::new(1.0, 1.0).expect("valid scenario");
    let spec = QuadratureSpec::default();
    let q = p_rect(&sc, 1.0, 1.0, &spec).unwrap_or(f64::NAN);
    let c = p_rect_separable(&sc, 1.0, 1.0).unwrap_or(f64::NAN);
    report.push("rectangle mass matches separable form", (q - c).abs() <= 1e-6, format!("quadrature {q:.9}, closed form {c:.9}"));
}

fn estimate(model: &DeploymentModel, n: u64, sc: &IntruderScenario, seed: u64, workers: usize) -> Option<DetectionEstimate> {
    estimate_detection_with_workers(model, n, sc, 1.0, TRIALS, RandomSeed(seed), workers).ok()
}

fn check_oracle(report: &mut ValidationReport) {
    let model = DeploymentModel::half_normal(5.0).expect("valid model");
    let sc = IntruderScenario::new(5.0, 3.0).expect("valid scenario");
    let analytic = full_report(&sc, 1.0, 5.0, 10, None, &QuadratureSpec::default()).map(|r| r.p_d);
    let est = estimate(&model, 10, &sc, 2024, 4);
    let (passed, detail) = match (analytic, est) {
        (Ok(p), Some(e)) => {
            let tol = 0.005f64.max(3.0 * e.ci_half_width);
            ((e.p_hat - p).abs() <= tol, format!("analytic {p:.5}, simulated {:.5} (tol {tol:.4})", e.p_hat))
        }
        _ => (false, "computation failed".into()),
    };
    report.push("analytic and simulated detection agree", passed, detail);

    let region = Rect::new(0.0, 100.0, -50.0, 50.0).expect("valid region");
    let uniform = DeploymentModel::uniform(region).expect("valid model");
    let near = IntruderScenario::new(10.0, 5.0).expect("valid scenario");
    let far = IntruderScenario::new(50.0, 5.0).expect("valid scenario");
    let (passed, detail) = match (estimate(&uniform, 10, &near, 1, 4), estimate(&uniform, 10, &far, 2, 4)) {
        (Some(a), Some(b)) => {
            let tol = 3.0 * a.ci_half_width.hypot(b.ci_half_width);
            ((a.p_hat - b.p_hat).abs() <= tol, format!("S=10: {:.5}, S=50: {:.5} (tol {tol:.4})", a.p_hat, b.p_hat))
        }
        _ => (false, "computation failed".into()),
    };
    report.push("uniform detection does not depend on S", passed, detail);

    let one = estimate(&model, 10, &sc, 99, 1);
    let many = estimate(&model, 10, &sc, 99, 6);
    report.push(
        "estimates independent of worker count",
        one.is_some() && one == many,
        format!("1 worker {:?}, 6 workers {:?}", one.map(|e| e.detected_count), many.map(|e| e.detected_count)),
    );
}

pub fn run_validation(hooks: &ValidationHooks) -> ValidationReport {
    let mut report = ValidationReport::default();
    check_normalization(&mut report, hooks);
    check_cdf(&mut report);
    check_bivariate(&mut report);
    check_sampler(&mut report);
    check_closed_forms(&mut report);
    check_oracle(&mut report);
    report
}
