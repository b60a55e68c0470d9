//! Batch front end: `sample`, `analytic`, `simulate`, `sweep`, `plot`, `validate`.
//!
//! Exit codes: 0 success, 1 validation error, 2 numerical failure,
//! 3 I/O failure.

pub mod svg;
pub mod table;
pub mod validate;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

pub use crate::config::{ExperimentConfig, ModelSpec};
use crate::analytic::full_report;
use crate::config::ConfigError;
use crate::distributions::{sample_deployment, ModelKind};
use crate::error::{DomainError, Error};
use crate::geometry::{IntruderScenario, Rect};
use crate::montecarlo::{estimate_detection_with_workers, estimate_fixed_field, sweep, DetectionEstimate};
use crate::quadrature::QuadratureSpec;
use crate::rng::RandomSeed;
use svg::{PlotError, PlotSpec};
use table::format_prob;
use validate::{run_validation, ValidationHooks};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Validation(String),
    #[error("{0}")]
    Numerical(String),
    #[error("{0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) => 1,
            CliError::Numerical(_) => 2,
            CliError::Io(_) => 3,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Domain(d) => CliError::Validation(d.to_string()),
            Error::Sampling(s) => CliError::Numerical(s.to_string()),
            Error::Quadrature(q) => CliError::Numerical(q.to_string()),
        }
    }
}

impl From<DomainError> for CliError {
    fn from(e: DomainError) -> Self {
        CliError::Validation(e.to_string())
    }
}

impl From<ConfigError> for CliError {
    fn from(e: ConfigError) -> Self {
        match e {
            ConfigError::Io { .. } => CliError::Io(e.to_string()),
            _ => CliError::Validation(e.to_string()),
        }
    }
}

impl From<PlotError> for CliError {
    fn from(e: PlotError) -> Self {
        CliError::Validation(e.to_string())
    }
}

fn io_err(path: &Path, e: std::io::Error) -> CliError {
    CliError::Io(format!("{}: {e}", path.display()))
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    std::fs::write(path, contents).map_err(|e| io_err(path, e))
}

fn parse_region(s: &str) -> Result<Rect, String> {
    let v: Vec<f64> = s
        .split(',')
        .map(|t| t.trim().parse::<f64>().map_err(|e| format!("{t:?}: {e}")))
        .collect::<Result<_, _>>()?;
    if v.len() != 4 {
        return Err("expected x_min,x_max,y_min,y_max".into());
    }
    Rect::new(v[0], v[1], v[2], v[3]).map_err(|e| e.to_string())
}

fn parse_model(s: &str) -> Result<ModelKind, String> {
    ModelKind::parse(s).ok_or_else(|| format!("unknown model {s:?}; expected uniform, half-normal, strip or quadrant"))
}

#[derive(Debug, Parser)]
#[command(name = "wsn-deploy", version, about = "Intruder detection probability for sensor deployments")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct ModelArgs {
    /// uniform, half-normal, strip or quadrant
    #[arg(long, value_parser = parse_model, default_value = "half-normal")]
    model: ModelKind,
    #[arg(long, default_value_t = 5.0)]
    sigma: f64,
    /// Region as x_min,x_max,y_min,y_max
    #[arg(long, value_parser = parse_region, default_value = "0,100,-50,50", allow_hyphen_values = true)]
    region: Rect,
    /// Restrict half-normal and quadrant models to the region
    #[arg(long)]
    truncate: bool,
}

impl ModelArgs {
    fn spec(&self) -> ModelSpec {
        ModelSpec { kind: self.model, truncate: self.truncate }
    }
}

#[derive(Debug, Args)]
pub struct ScenarioArgs {
    /// Entry abscissa S
    #[arg(long = "start", short = 'S', default_value_t = 5.0)]
    start: f64,
    /// Distance d traveled toward the target
    #[arg(long = "distance", short = 'd', default_value_t = 3.0)]
    distance: f64,
    /// Sensing range r
    #[arg(long = "range", short = 'r', default_value_t = 1.0)]
    range: f64,
    /// Number of sensors N
    #[arg(long = "sensors", short = 'n', default_value_t = 10)]
    sensors: u64,
}

impl ScenarioArgs {
    fn scenario(&self) -> Result<IntruderScenario, CliError> {
        Ok(IntruderScenario::new(self.start, self.distance)?)
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Draw one sensor field and write it as x,y CSV
    Sample {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long = "sensors", short = 'n')]
        sensors: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, short = 'o')]
        output: PathBuf,
    },
    /// Analytic detection probability by quadrature
    Analytic {
        #[arg(long, default_value_t = 5.0)]
        sigma: f64,
        #[command(flatten)]
        scenario: ScenarioArgs,
        /// Region for the uniform baseline, as x_min,x_max,y_min,y_max
        #[arg(long, value_parser = parse_region, default_value = "0,100,-50,50", allow_hyphen_values = true)]
        region: Rect,
        #[arg(long, default_value_t = 1e-8)]
        tolerance: f64,
    },
    /// Monte Carlo detection probability
    Simulate {
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        scenario: ScenarioArgs,
        #[arg(long, default_value_t = 100_000)]
        trials: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Worker threads; results do not depend on this
        #[arg(long)]
        workers: Option<usize>,
        /// Evaluate a single field drawn from the seed instead of redeploying per trial
        #[arg(long)]
        fixed_field: bool,
    },
    /// Run a parameter sweep described by a JSON config
    Sweep {
        #[arg(long, short = 'c')]
        config: PathBuf,
    },
    /// Render a results CSV as an SVG line chart
    Plot {
        #[arg(long, short = 'i')]
        input: PathBuf,
        #[arg(long, short = 'o')]
        output: PathBuf,
        #[arg(long = "x", default_value = "N")]
        x_column: String,
        /// Comma-separated y columns
        #[arg(long = "y", default_value = "p_hat", value_delimiter = ',')]
        y_columns: Vec<String>,
        /// Comma-separated columns naming a series
        #[arg(long = "series", default_value = "model", value_delimiter = ',')]
        series_key: Vec<String>,
        #[arg(long, default_value = "Detection probability vs number of sensors")]
        title: String,
        #[arg(long, default_value = "Number of sensors")]
        x_label: String,
        #[arg(long, default_value = "Detection probability")]
        y_label: String,
        #[arg(long, default_value_t = 800)]
        width: u32,
        #[arg(long, default_value_t = 500)]
        height: u32,
    },
    /// Run the built-in invariant checks
    Validate {
        /// Test hook: scale the half-normal normalizer to force a failure
        #[arg(long, hide = true)]
        inject_normalizer_scale: Option<f64>,
    },
}

fn workers_or_default(w: Option<usize>) -> usize {
    w.unwrap_or_else(|| std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1))
}

fn print_estimate(out: &mut dyn Write, e: &DetectionEstimate) -> std::io::Result<()> {
    writeln!(out, "p_hat={}", format_prob(e.p_hat))?;
    writeln!(out, "ci_half_width={}", format_prob(e.ci_half_width))?;
    writeln!(out, "detected={}", e.detected_count)?;
    writeln!(out, "trials={}", e.trials)?;
    writeln!(out, "seed={}", e.master_seed)?;
    writeln!(out, "{}", serde_json::to_string(e).expect("plain struct serializes"))
}

fn sidecar_path(output: &Path) -> PathBuf {
    let stem = output.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| "sweep".into());
    output.with_file_name(format!("{stem}.status.csv"))
}

/// Runs one parsed command, writing its report to `out`.
pub fn execute(cmd: Command, out: &mut dyn Write) -> Result<(), CliError> {
    let stdout_err = |e: std::io::Error| CliError::Io(format!("stdout: {e}"));
    match cmd {
        Command::Sample { model, sensors, seed, output } => {
            let m = model.spec().build(model.sigma, &model.region)?;
            let pts = sample_deployment(&m, sensors, RandomSeed(seed)).map_err(Error::from)?;
            write_file(&output, &table::positions_csv(&pts))?;
            writeln!(out, "wrote {} positions to {}", pts.len(), output.display()).map_err(stdout_err)?;
        }
        Command::Analytic { sigma, scenario, region, tolerance } => {
            let sc = scenario.scenario()?;
            let spec = QuadratureSpec::with_tolerance(tolerance);
            let r = full_report(&sc, scenario.range, sigma, scenario.sensors, Some(&region), &spec)?;
            let opt = |v: Option<f64>| v.map(format_prob).unwrap_or_else(|| "none".into());
            let lines = [
                ("p_rect", format_prob(r.p_rect)),
                ("p_left", format_prob(r.p_left)),
                ("p_right", format_prob(r.p_right)),
                ("p_total", format_prob(r.p_total)),
                ("p_uniform", opt(r.p_single_uniform)),
                ("p_d", format_prob(r.p_d)),
                ("p_not_detected", format_prob(r.p_not_detected)),
                ("p_d_uniform", opt(r.p_d_uniform)),
                ("n_sensors", r.n_sensors.to_string()),
            ];
            for (k, v) in lines {
                writeln!(out, "{k}={v}").map_err(stdout_err)?;
            }
            writeln!(out, "{}", serde_json::to_string(&r).expect("plain struct serializes")).map_err(stdout_err)?;
        }
        Command::Simulate { model, scenario, trials, seed, workers, fixed_field } => {
            let sc = scenario.scenario()?;
            let m = model.spec().build(model.sigma, &model.region)?;
            let est = if fixed_field {
                estimate_fixed_field(&m, scenario.sensors, &sc, scenario.range, RandomSeed(seed))?.1
            } else {
                estimate_detection_with_workers(
                    &m,
                    scenario.sensors,
                    &sc,
                    scenario.range,
                    trials,
                    RandomSeed(seed),
                    workers_or_default(workers),
                )?
            };
            print_estimate(out, &est).map_err(stdout_err)?;
        }
        Command::Sweep { config } => {
            let cfg = ExperimentConfig::load(&config)?;
            let result = sweep(&cfg)?;
            let output = PathBuf::from(&cfg.output_path);
            let sidecar = sidecar_path(&output);
            write_file(&sidecar, &table::status_csv(&result))?;
            if result.all_invalid() {
                return Err(CliError::Validation(format!(
                    "every parameter combination is invalid; see {}",
                    sidecar.display()
                )));
            }
            write_file(&output, &table::sweep_csv(&result))?;
            writeln!(
                out,
                "wrote {} rows to {} ({} combinations, statuses in {})",
                result.rows.len(),
                output.display(),
                result.statuses.len(),
                sidecar.display()
            )
            .map_err(stdout_err)?;
        }
        Command::Plot { input, output, x_column, y_columns, series_key, title, x_label, y_label, width, height } => {
            let text = std::fs::read_to_string(&input).map_err(|e| io_err(&input, e))?;
            let spec = PlotSpec {
                x_column,
                y_columns,
                series_key: series_key.into_iter().filter(|s| !s.is_empty()).collect(),
                title,
                x_label,
                y_label,
                width,
                height,
            };
            let series = svg::series_from_csv(&text, &spec)?;
            write_file(&output, &svg::render(&series, &spec)?)?;
            writeln!(out, "wrote {} series to {}", series.len(), output.display()).map_err(stdout_err)?;
        }
        Command::Validate { inject_normalizer_scale } => {
            let hooks = ValidationHooks { normalizer_scale: inject_normalizer_scale.unwrap_or(1.0) };
            let report = run_validation(&hooks);
            for c in &report.checks {
                let tag = if c.passed { "PASS" } else { "FAIL" };
                writeln!(out, "{tag} {}: {}", c.name, c.detail).map_err(stdout_err)?;
            }
            if !report.all_passed() {
                let failed = report.checks.iter().filter(|c| !c.passed).count();
                return Err(CliError::Validation(format!("{failed} check(s) failed")));
            }
        }
    }
    Ok(())
}

/// Parses `args`, runs the command and returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            if code == 0 {
                let _ = write!(out, "{e}");
            } else {
                let _ = write!(err, "{e}");
            }
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
