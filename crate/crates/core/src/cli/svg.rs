//! Hand-written SVG line charts.
//!
//! One chart area with linear axes. Tick steps follow the nice-number rule:
//! the raw step `range / (k - 1)` is rounded to 1, 2, 5 or 10 times a power
//! of ten, and `k` is tried in the order 6, 7, 5, 8, 4, 9 until the axis gets
//! between 5 and 8 ticks.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use thiserror::Error;

const PALETTE: [&str; 8] = ["#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf"];
const MARGIN_LEFT: f64 = 70.0;
const MARGIN_RIGHT: f64 = 160.0;
const MARGIN_TOP: f64 = 40.0;
const MARGIN_BOTTOM: f64 = 55.0;

#[derive(Debug, Clone, PartialEq)]
pub struct PlotSpec {
    pub x_column: String,
    pub y_columns: Vec<String>,
    /// Columns whose joined values name a series. Empty means one series.
    pub series_key: Vec<String>,
    pub title: String,
    pub x_label: String,
    pub y_label: String,
    pub width: u32,
    pub height: u32,
}

#[derive(Debug, Error, PartialEq)]
pub enum PlotError {
    #[error("missing column(s): {}", .0.join(", "))]
    MissingColumns(Vec<String>),
    #[error("no plottable data rows")]
    NoData,
    #[error("non-numeric value {value:?} in column {column}")]
    NotNumeric { column: String, value: String },
    #[error("bad CSV: {0}")]
    Csv(String),
    #[error("plot size {0}x{1} is too small")]
    TooSmall(u32, u32),
}

/// One polyline.
#[derive(Debug, Clone, PartialEq)]
pub struct Series {
    pub label: String,
    pub points: Vec<(f64, f64)>,
}

fn parse_num(column: &str, s: &str) -> Result<Option<f64>, PlotError> {
    let t = s.trim();
    if t.is_empty() {
        return Ok(None);
    }
    t.parse::<f64>()
        .map(Some)
        .map_err(|_| PlotError::NotNumeric { column: column.to_string(), value: t.to_string() })
}

/// Groups CSV rows into series, in order of first appearance.
pub fn series_from_csv(csv_text: &str, spec: &PlotSpec) -> Result<Vec<Series>, PlotError> {
    let mut reader = csv::ReaderBuilder::new().has_headers(true).from_reader(csv_text.as_bytes());
    let headers = reader.headers().map_err(|e| PlotError::Csv(e.to_string()))?.clone();
    let index = |name: &str| headers.iter().position(|h| h == name);

    let wanted = std::iter::once(&spec.x_column).chain(&spec.y_columns).chain(&spec.series_key);
    let missing: Vec<String> = wanted.filter(|c| index(c).is_none()).cloned().collect();
    if !missing.is_empty() {
        return Err(PlotError::MissingColumns(missing));
    }
    let xi = index(&spec.x_column).unwrap();
    let yis: Vec<usize> = spec.y_columns.iter().map(|c| index(c).unwrap()).collect();
    let kis: Vec<usize> = spec.series_key.iter().map(|c| index(c).unwrap()).collect();

    let mut order: Vec<String> = Vec::new();
    let mut groups: BTreeMap<String, Vec<(f64, f64)>> = BTreeMap::new();
    for rec in reader.records() {
        let rec = rec.map_err(|e| PlotError::Csv(e.to_string()))?;
        let Some(x) = parse_num(&spec.x_column, rec.get(xi).unwrap_or(""))? else { continue };
        let key: Vec<&str> = kis.iter().map(|&k| rec.get(k).unwrap_or("")).collect();
        let key = key.join(" ");
        for (yc, &yi) in spec.y_columns.iter().zip(&yis) {
            let Some(y) = parse_num(yc, rec.get(yi).unwrap_or(""))? else { continue };
            let label = match (key.is_empty(), spec.y_columns.len() > 1) {
                (true, _) => yc.clone(),
                (false, false) => key.clone(),
                (false, true) => format!("{key} {yc}"),
            };
            if !groups.contains_key(&label) {
                order.push(label.clone());
            }
            groups.entry(label).or_default().push((x, y));
        }
    }
    if groups.is_empty() {
        return Err(PlotError::NoData);
    }
    Ok(order
        .into_iter()
        .map(|label| {
            let mut points = groups.remove(&label).unwrap_or_default();
            points.sort_by(|a, b| a.0.total_cmp(&b.0));
            Series { label, points }
        })
        .collect())
}

fn nice(x: f64, round: bool) -> f64 {
    let e = x.log10().floor();
    let f = x / 10f64.powf(e);
    let nf = if round {
        if f < 1.5 {
            1.0
        } else if f < 3.0 {
            2.0
        } else if f < 7.0 {
            5.0
        } else {
            10.0
        }
    } else if f <= 1.0 {
        1.0
    } else if f <= 2.0 {
        2.0
    } else if f <= 5.0 {
        5.0
    } else {
        10.0
    };
    nf * 10f64.powf(e)
}

/// Tick positions covering `[lo, hi]`, 5 to 8 of them where possible.
pub fn nice_ticks(lo: f64, hi: f64) -> Vec<f64> {
    let (lo, hi) = if hi > lo {
        (lo, hi)
    } else {
        let pad = if lo == 0.0 { 1.0 } else { 0.5 * lo.abs() };
        (lo - pad, hi + pad)
    };
    let mut best = Vec::new();
    for k in [6.0, 7.0, 5.0, 8.0, 4.0, 9.0] {
        let range = nice(hi - lo, false);
        let step = nice(range / (k - 1.0), true);
        let start = (lo / step).floor() * step;
        let end = (hi / step).ceil() * step;
        let count = ((end - start) / step).round() as usize + 1;
        let ticks: Vec<f64> = (0..count).map(|i| start + i as f64 * step).collect();
        if (5..=8).contains(&ticks.len()) {
            return ticks;
        }
        if best.is_empty() {
            best = ticks;
        }
    }
    best
}

fn tick_label(v: f64, step: f64) -> String {
    let decimals = if step >= 1.0 { 0 } else { (-step.log10()).ceil() as usize };
    let s = format!("{:.*}", decimals, v);
    if s.starts_with('-') && s.trim_start_matches(['-', '0', '.']).is_empty() {
        s[1..].to_string()
    } else {
        s
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

/// Renders the series as a self-contained SVG document.
pub fn render(series: &[Series], spec: &PlotSpec) -> Result<String, PlotError> {
    let (w, h) = (f64::from(spec.width), f64::from(spec.height));
    if w < MARGIN_LEFT + MARGIN_RIGHT + 50.0 || h < MARGIN_TOP + MARGIN_BOTTOM + 50.0 {
        return Err(PlotError::TooSmall(spec.width, spec.height));
    }
    let pts = series.iter().flat_map(|s| s.points.iter());
    let (mut x0, mut x1, mut y0, mut y1) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
    for &(x, y) in pts {
        x0 = x0.min(x);
        x1 = x1.max(x);
        y0 = y0.min(y);
        y1 = y1.max(y);
    }
    if !x0.is_finite() {
        return Err(PlotError::NoData);
    }
    let xt = nice_ticks(x0, x1);
    let yt = nice_ticks(y0, y1);
    let (xa, xb) = (xt[0], *xt.last().unwrap());
    let (ya, yb) = (yt[0], *yt.last().unwrap());
    let (pl, pr, pt, pb) = (MARGIN_LEFT, w - MARGIN_RIGHT, MARGIN_TOP, h - MARGIN_BOTTOM);
    let sx = |x: f64| pl + (x - xa) / (xb - xa) * (pr - pl);
    let sy = |y: f64| pb - (y - ya) / (yb - ya) * (pb - pt);

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(out, r#"<rect x="0" y="0" width="{w}" height="{h}" fill="white"/>"#);
    let _ = writeln!(
        out,
        r#"<text x="{:.2}" y="24" text-anchor="middle" font-size="15">{}</text>"#,
        (pl + pr) / 2.0,
        escape(&spec.title)
    );

    let xstep = if xt.len() > 1 { xt[1] - xt[0] } else { 1.0 };
    for &t in &xt {
        let x = sx(t);
        let _ = writeln!(out, r##"<line x1="{x:.2}" y1="{pt:.2}" x2="{x:.2}" y2="{pb:.2}" stroke="#e0e0e0"/>"##);
        let _ = writeln!(
            out,
            r#"<text x="{x:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
            pb + 18.0,
            tick_label(t, xstep)
        );
    }
    let ystep = if yt.len() > 1 { yt[1] - yt[0] } else { 1.0 };
    for &t in &yt {
        let y = sy(t);
        let _ = writeln!(out, r##"<line x1="{pl:.2}" y1="{y:.2}" x2="{pr:.2}" y2="{y:.2}" stroke="#e0e0e0"/>"##);
        let _ = writeln!(
            out,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="end">{}</text>"#,
            pl - 6.0,
            y + 4.0,
            tick_label(t, ystep)
        );
    }
    let _ = writeln!(
        out,
        r#"<path d="M{pl:.2},{pt:.2} L{pl:.2},{pb:.2} L{pr:.2},{pb:.2}" fill="none" stroke="black"/>"#
    );
    let _ = writeln!(
        out,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
        (pl + pr) / 2.0,
        h - 12.0,
        escape(&spec.x_label)
    );
    let _ = writeln!(
        out,
        r#"<text x="18" y="{:.2}" text-anchor="middle" transform="rotate(-90 18 {:.2})">{}</text>"#,
        (pt + pb) / 2.0,
        (pt + pb) / 2.0,
        escape(&spec.y_label)
    );

    for (i, s) in series.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        let coords: Vec<String> = s.points.iter().map(|&(x, y)| format!("{:.2},{:.2}", sx(x), sy(y))).collect();
        let _ = writeln!(
            out,
            r#"<polyline fill="none" stroke="{color}" stroke-width="2" points="{}"/>"#,
            coords.join(" ")
        );
        for &(x, y) in &s.points {
            let _ = writeln!(out, r#"<circle cx="{:.2}" cy="{:.2}" r="3" fill="{color}"/>"#, sx(x), sy(y));
        }
        let ly = pt + 10.0 + 20.0 * i as f64;
        let lx = pr + 15.0;
        let _ = writeln!(
            out,
            r#"<line x1="{lx:.2}" y1="{ly:.2}" x2="{:.2}" y2="{ly:.2}" stroke="{color}" stroke-width="2"/>"#,
            lx + 24.0
        );
        let _ = writeln!(out, r#"<text x="{:.2}" y="{:.2}">{}</text>"#, lx + 30.0, ly + 4.0, escape(&s.label));
    }
    out.push_str("</svg>\n");
    Ok(out)
}
