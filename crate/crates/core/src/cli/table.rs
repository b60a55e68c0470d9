//! CSV emission for sensor positions and sweep results.

use std::fmt::Write as _;

use crate::geometry::Point;
use crate::montecarlo::{RowStatus, SweepResult};

pub const SWEEP_HEADER: &str = "model,sigma,N,S,d,r,trials,p_analytic,p_hat,ci_half_width,seed";
pub const STATUS_HEADER: &str = "model,sigma,N,S,d,r,status,message";

/// `v` with `digits` significant digits, fixed notation, `.` separator.
pub fn format_sig(v: f64, digits: usize) -> String {
    if v == 0.0 {
        return "0".into();
    }
    if !v.is_finite() {
        return v.to_string();
    }
    let digits = digits.max(1) as i32;
    let exp = v.abs().log10().floor() as i32;
    let s = format!("{:.*}", (digits - 1 - exp).max(0) as usize, v);
    // Rounding can carry into a new leading digit (9.99.. -> 10.0..).
    let leading = s.trim_start_matches('-').split('.').next().unwrap_or("");
    let int_digits = leading.trim_start_matches('0').len() as i32;
    if int_digits > exp + 1 && int_digits > 0 {
        return format!("{:.*}", (digits - 2 - exp).max(0) as usize, v);
    }
    s
}

/// Probabilities are printed with 10 significant digits.
pub fn format_prob(v: f64) -> String {
    format_sig(v, 10)
}

fn opt(v: Option<f64>, f: impl Fn(f64) -> String) -> String {
    v.map(f).unwrap_or_default()
}

fn csv_text(s: &str) -> String {
    if s.contains([',', '"', '\n', '\r']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn positions_csv(points: &[Point]) -> String {
    let mut out = String::from("x,y\n");
    for p in points {
        let _ = writeln!(out, "{},{}", p.x, p.y);
    }
    out
}

pub fn sweep_csv(result: &SweepResult) -> String {
    let mut out = format!("{SWEEP_HEADER}\n");
    for r in &result.rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{},{}",
            r.model,
            opt(r.sigma, |s| s.to_string()),
            r.n,
            r.s,
            r.d,
            r.r,
            r.trials,
            opt(r.p_analytic, format_prob),
            format_prob(r.p_hat),
            format_prob(r.ci_half_width),
            r.seed,
        );
    }
    out
}

fn status_line(s: &RowStatus) -> String {
    format!(
        "{},{},{},{},{},{},{},{}",
        s.model,
        opt(s.sigma, |v| v.to_string()),
        s.n,
        s.s,
        s.d,
        s.r,
        csv_text(&s.status),
        csv_text(&s.message)
    )
}

pub fn status_csv(result: &SweepResult) -> String {
    let mut out = format!("{STATUS_HEADER}\n");
    for s in &result.statuses {
        out.push_str(&status_line(s));
        out.push('\n');
    }
    out
}
