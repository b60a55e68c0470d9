//! Experiment sweep configuration, read from a single JSON document.
//!
//! ```json
//! {
//!   "models": [{ "kind": "half-normal" }, { "kind": "uniform" }],
//!   "sigma_values": [10.0],
//!   "n_values": [10, 50, 100, 200, 500],
//!   "s_values": [5.0],
//!   "d_values": [5.0],
//!   "r_values": [1.0],
//!   "region": { "x_min": 0.0, "x_max": 100.0, "y_min": -50.0, "y_max": 50.0 },
//!   "trials": 20000,
//!   "master_seed": 42,
//!   "quadrature_tolerance": 1e-8,
//!   "output_path": "fig4.csv"
//! }
//! ```
//!
//! Unknown keys are rejected. `kind` is one of `uniform`, `half-normal`,
//! `strip`, `quadrant`. Half-normal and quadrant models are unbounded unless
//! `"truncate": true`, which restricts them to `region` by rejection.
//! Uniform and strip models always use `region`.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::distributions::{DeploymentModel, ModelKind};
use crate::error::DomainError;
use crate::geometry::{Rect, Region};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelSpec {
    pub kind: ModelKind,
    #[serde(default)]
    pub truncate: bool,
}

impl ModelSpec {
    pub fn new(kind: ModelKind) -> Self {
        ModelSpec { kind, truncate: false }
    }

    /// Whether sigma enters the model at all.
    pub fn uses_sigma(&self) -> bool {
        self.kind != ModelKind::Uniform
    }

    pub fn build(&self, sigma: f64, region: &Rect) -> Result<DeploymentModel, DomainError> {
        let region = match self.kind {
            ModelKind::Uniform | ModelKind::Strip => Region::Rectangle(*region),
            ModelKind::HalfNormal | ModelKind::Quadrant if self.truncate => Region::Rectangle(*region),
            ModelKind::HalfNormal | ModelKind::Quadrant => Region::HalfPlane,
        };
        DeploymentModel::build(self.kind, sigma, region)
    }
}

fn default_tolerance() -> f64 {
    1e-8
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub models: Vec<ModelSpec>,
    pub sigma_values: Vec<f64>,
    pub n_values: Vec<u64>,
    pub s_values: Vec<f64>,
    pub d_values: Vec<f64>,
    pub r_values: Vec<f64>,
    pub region: Rect,
    pub trials: u64,
    pub master_seed: u64,
    #[serde(default = "default_tolerance")]
    pub quadrature_tolerance: f64,
    pub output_path: String,
}

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("cannot read config {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("malformed config: {0}")]
    Parse(#[from] serde_json::Error),
    #[error(transparent)]
    Invalid(#[from] DomainError),
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<Self, ConfigError> {
        let cfg: ExperimentConfig = serde_json::from_str(text)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path)
            .map_err(|source| ConfigError::Io { path: path.display().to_string(), source })?;
        Self::from_json(&text)
    }

    /// Rejects every out-of-domain value. Combinations that are only invalid
    /// together (`d > S`) are left to the sweep, which reports them per row.
    pub fn validate(&self) -> Result<(), DomainError> {
        let invalid = |m: String| Err(DomainError::InvalidParameter(m));
        let lists: [(&str, usize); 6] = [
            ("models", self.models.len()),
            ("sigma_values", self.sigma_values.len()),
            ("n_values", self.n_values.len()),
            ("s_values", self.s_values.len()),
            ("d_values", self.d_values.len()),
            ("r_values", self.r_values.len()),
        ];
        for (name, len) in lists {
            if len == 0 {
                return invalid(format!("{name} must not be empty"));
            }
        }
        if let Some(s) = self.sigma_values.iter().find(|s| !(s.is_finite() && **s > 0.0)) {
            return invalid(format!("sigma must be > 0, got {s}"));
        }
        if let Some(r) = self.r_values.iter().find(|r| !(r.is_finite() && **r > 0.0)) {
            return invalid(format!("r must be > 0, got {r}"));
        }
        for (name, vals) in [("S", &self.s_values), ("d", &self.d_values)] {
            if let Some(v) = vals.iter().find(|v| !(v.is_finite() && **v >= 0.0)) {
                return invalid(format!("{name} must be >= 0, got {v}"));
            }
        }
        if self.trials == 0 {
            return invalid("trials must be >= 1".into());
        }
        if !(self.quadrature_tolerance.is_finite() && self.quadrature_tolerance > 0.0) {
            return invalid(format!("quadrature_tolerance must be > 0, got {}", self.quadrature_tolerance));
        }
        self.region.validate()?;
        if self.output_path.is_empty() {
            return invalid("output_path must not be empty".into());
        }
        for m in &self.models {
            m.build(self.sigma_values[0], &self.region)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const FIG4: &str = r#"{
        "models": [{"kind": "half-normal"}, {"kind": "uniform"}],
        "sigma_values": [10.0],
        "n_values": [10, 50],
        "s_values": [5.0],
        "d_values": [5.0],
        "r_values": [1.0],
        "region": {"x_min": 0.0, "x_max": 100.0, "y_min": -50.0, "y_max": 50.0},
        "trials": 100,
        "master_seed": 7,
        "output_path": "out.csv"
    }"#;

    #[test]
    fn parses_with_default_tolerance() {
        let cfg = ExperimentConfig::from_json(FIG4).unwrap();
        assert_eq!(cfg.quadrature_tolerance, 1e-8);
        assert_eq!(cfg.models[0].kind, ModelKind::HalfNormal);
        assert!(!cfg.models[0].truncate);
    }

    #[test]
    fn unknown_keys_are_errors() {
        let typo = FIG4.replace("\"trials\"", "\"trails\"");
        assert!(matches!(ExperimentConfig::from_json(&typo), Err(ConfigError::Parse(_))));
        let model_typo = FIG4.replace("{\"kind\": \"uniform\"}", "{\"kind\": \"uniform\", \"sigma\": 1}");
        assert!(ExperimentConfig::from_json(&model_typo).is_err());
    }

    #[test]
    fn out_of_domain_values_are_rejected() {
        for (from, to) in [
            ("\"sigma_values\": [10.0]", "\"sigma_values\": [0.0]"),
            ("\"trials\": 100", "\"trials\": 0"),
            ("\"r_values\": [1.0]", "\"r_values\": [-1.0]"),
            ("\"n_values\": [10, 50]", "\"n_values\": []"),
            ("\"x_max\": 100.0", "\"x_max\": -1.0"),
            ("\"s_values\": [5.0]", "\"s_values\": [-5.0]"),
        ] {
            let text = FIG4.replace(from, to);
            assert!(matches!(ExperimentConfig::from_json(&text), Err(ConfigError::Invalid(_))), "{to}");
        }
    }

    #[test]
    fn model_regions() {
        let region = Rect::new(0.0, 100.0, -50.0, 50.0).unwrap();
        let hn = ModelSpec::new(ModelKind::HalfNormal).build(5.0, &region).unwrap();
        assert_eq!(hn.region(), Region::HalfPlane);
        let truncated = ModelSpec { kind: ModelKind::HalfNormal, truncate: true }.build(5.0, &region).unwrap();
        assert_eq!(truncated.region(), Region::Rectangle(region));
        assert!(!ModelSpec::new(ModelKind::Uniform).uses_sigma());
    }
}
