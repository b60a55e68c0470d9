//! Browser bindings for the `www/` demo page.
//!
//! Arrays cross the boundary as flat `Float64Array`s with interleaved
//! columns; the column order is given on each function.

use wasm_bindgen::prelude::*;
use wsn_deploy::analytic::{capsule_mass, detection_probability, full_report, Density};
use wsn_deploy::config::ModelSpec;
use wsn_deploy::distributions::{sample_deployment, HalfNormalParams, ModelKind};
use wsn_deploy::geometry::{detects, IntruderScenario, Point, Rect};
use wsn_deploy::quadrature::QuadratureSpec;
use wsn_deploy::rng::RandomSeed;

const REGION: (f64, f64, f64, f64) = (0.0, 100.0, -50.0, 50.0);

fn region() -> Rect {
    Rect::new(REGION.0, REGION.1, REGION.2, REGION.3).expect("constant region is valid")
}

fn js<E: std::fmt::Display>(e: E) -> JsError {
    JsError::new(&e.to_string())
}

/// `[y, pdf, cdf]` rows for `points` evenly spaced y in `[0, y_max]`.
pub fn density_rows(sigma: f64, y_max: f64, points: usize) -> Result<Vec<f64>, String> {
    let p = HalfNormalParams::new(sigma).map_err(|e| e.to_string())?;
    if !(y_max.is_finite() && y_max > 0.0) || points < 2 {
        return Err("need y_max > 0 and at least 2 points".into());
    }
    let step = y_max / (points - 1) as f64;
    Ok((0..points)
        .flat_map(|i| {
            let y = i as f64 * step;
            [y, p.pdf(y), p.cdf(y)]
        })
        .collect())
}

/// `[x, y]` rows of one deployment on the demo region.
pub fn field_rows(model: &str, sigma: f64, n: usize, seed: u64) -> Result<Vec<f64>, String> {
    let kind = ModelKind::parse(model).ok_or_else(|| format!("unknown model {model:?}"))?;
    let m = ModelSpec::new(kind).build(sigma, &region()).map_err(|e| e.to_string())?;
    let pts = sample_deployment(&m, n, RandomSeed(seed)).map_err(|e| e.to_string())?;
    Ok(pts.iter().flat_map(|p| [p.x, p.y]).collect())
}

/// Uniform density on the demo region, zero outside it.
struct RegionUniform(Rect);

impl Density for RegionUniform {
    fn value(&self, x: f64, y: f64) -> f64 {
        if self.0.contains(Point::new(x, y)) { 1.0 / self.0.area() } else { 0.0 }
    }

    fn support_x_min(&self) -> f64 {
        self.0.x_min
    }
}

/// `[N, half-normal P_d, uniform P_d]` rows for N = 0..=n_max.
/// The uniform column counts only the part of the capsule inside the region.
pub fn curve_rows(sigma: f64, r: f64, s: f64, d: f64, n_max: u32) -> Result<Vec<f64>, String> {
    let sc = IntruderScenario::new(s, d).map_err(|e| e.to_string())?;
    let spec = QuadratureSpec::with_tolerance(1e-9);
    let report = full_report(&sc, r, sigma, 0, None, &spec).map_err(|e| e.to_string())?;
    let uniform = capsule_mass(&sc, r, &RegionUniform(region()), &spec).map_err(|e| e.to_string())?.total();
    Ok((0..=u64::from(n_max))
        .flat_map(|n| {
            [n as f64, detection_probability(report.p_total, n), detection_probability(uniform, n)]
        })
        .collect())
}

#[wasm_bindgen]
pub fn half_normal_curves(sigma: f64, y_max: f64, points: usize) -> Result<Vec<f64>, JsError> {
    density_rows(sigma, y_max, points).map_err(js)
}

#[wasm_bindgen]
pub fn sample_field(model: &str, sigma: f64, n: usize, seed: u64) -> Result<Vec<f64>, JsError> {
    field_rows(model, sigma, n, seed).map_err(js)
}

/// 1 for each sensor in `xy` (interleaved) that sees the intruder path, else 0.
#[wasm_bindgen]
pub fn detecting_sensors(xy: &[f64], s: f64, d: f64, r: f64) -> Result<Vec<u8>, JsError> {
    let sc = IntruderScenario::new(s, d).map_err(js)?;
    Ok(xy.chunks_exact(2).map(|c| u8::from(detects(Point::new(c[0], c[1]), &sc, r))).collect())
}

#[wasm_bindgen]
pub fn detection_curve(sigma: f64, r: f64, s: f64, d: f64, n_max: u32) -> Result<Vec<f64>, JsError> {
    curve_rows(sigma, r, s, d, n_max).map_err(js)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn density_rows_layout() {
        let rows = density_rows(1.0, 4.0, 5).unwrap();
        assert_eq!(rows.len(), 15);
        assert!((rows[1] - 0.797_884_560_8).abs() < 1e-9);
        assert_eq!(rows[2], 0.0);
        assert!(density_rows(-1.0, 4.0, 5).is_err());
    }

    #[test]
    fn field_rows_deterministic() {
        let a = field_rows("half-normal", 10.0, 50, 7).unwrap();
        assert_eq!(a.len(), 100);
        assert_eq!(a, field_rows("half-normal", 10.0, 50, 7).unwrap());
        assert!(a.chunks(2).all(|p| p[0] >= 0.0));
        assert!(field_rows("gaussian", 1.0, 1, 1).is_err());
    }

    #[test]
    fn curve_rows_start_at_zero_and_increase() {
        let rows = curve_rows(10.0, 1.0, 5.0, 5.0, 100).unwrap();
        assert_eq!(rows.len(), 303);
        assert_eq!(&rows[..3], &[0.0, 0.0, 0.0]);
        let half: Vec<f64> = rows.chunks(3).map(|c| c[1]).collect();
        assert!(half.windows(2).all(|w| w[1] >= w[0]));
        assert!(rows.chunks(3).all(|c| c[1] >= c[2]));
        // Path [0, 5]: the left half-disk lies wholly at x < 0, leaving 10 + pi/2.
        let p1 = rows[5];
        let expected = (10.0 + std::f64::consts::FRAC_PI_2) / 10_000.0;
        assert!((p1 - expected).abs() < 1e-7, "{p1} vs {expected}");
    }
}
