//! Globally adaptive Simpson quadrature in one and two dimensions.
//!
//! The interval is split into a few initial panels. Each panel carries the
//! Richardson-extrapolated Simpson value `S_halves + (S_halves - S_whole) / 15`
//! and the error estimate `|S_halves - S_whole|`. The usual `/ 15` is left off
//! the error: it assumes a smooth integrand, which panels touching a
//! half-disk edge are not. The panel with the largest error is bisected
//! until the summed error is below the tolerance or the subdivision budget
//! is spent. Refining globally rather than recursively with halved
//! tolerances copes with the square-root endpoint behaviour of integrals
//! over half-disks.
//!
//! Two-dimensional integrals are iterated: the outer x-integral gets `2/3`
//! of the tolerance, and every inner y-integral gets `tol / (3 * width_x)`,
//! so the inner errors add up to at most `tol / 3`.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::QuadratureError;

const INITIAL_PANELS: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    pub absolute_tolerance: f64,
    /// Upper bound on panels per one-dimensional integral.
    pub max_subdivisions: usize,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec { absolute_tolerance: 1e-8, max_subdivisions: 20_000 }
    }
}

impl QuadratureSpec {
    pub fn with_tolerance(absolute_tolerance: f64) -> Self {
        QuadratureSpec { absolute_tolerance, ..Default::default() }
    }

    pub fn validate(&self) -> Result<(), QuadratureError> {
        if !(self.absolute_tolerance.is_finite() && self.absolute_tolerance > 0.0) {
            return Err(QuadratureError::InvalidInput(format!(
                "absolute tolerance must be > 0, got {}",
                self.absolute_tolerance
            )));
        }
        if self.max_subdivisions < INITIAL_PANELS {
            return Err(QuadratureError::InvalidInput(format!(
                "max_subdivisions must be >= {INITIAL_PANELS}"
            )));
        }
        Ok(())
    }
}

/// Integral value with its estimated absolute error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub error: f64,
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    fa: f64,
    fl: f64,
    fm: f64,
    fr: f64,
    fb: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error).then(other.a.total_cmp(&self.a))
    }
}

impl Panel {
    fn new(a: f64, b: f64, fa: f64, fl: f64, fm: f64, fr: f64, fb: f64) -> Self {
        let h = b - a;
        let whole = h / 6.0 * (fa + 4.0 * fm + fb);
        let halves = h / 12.0 * (fa + 4.0 * fl + 2.0 * fm + 4.0 * fr + fb);
        let diff = halves - whole;
        Panel { a, b, fa, fl, fm, fr, fb, value: halves + diff / 15.0, error: diff.abs() }
    }

    fn splittable(&self) -> bool {
        let m = 0.5 * (self.a + self.b);
        let q = 0.5 * (self.a + m);
        self.a < q && q < m && m < self.b
    }
}

fn eval<F>(f: &mut F, x: f64) -> Result<f64, QuadratureError>
where
    F: FnMut(f64) -> Result<f64, QuadratureError>,
{
    let v = f(x)?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(QuadratureError::NonFiniteIntegrand { x, y: f64::NAN })
    }
}

fn make_panel<F>(f: &mut F, a: f64, b: f64, fa: f64, fm: f64, fb: f64) -> Result<Panel, QuadratureError>
where
    F: FnMut(f64) -> Result<f64, QuadratureError>,
{
    let m = 0.5 * (a + b);
    let fl = eval(f, 0.5 * (a + m))?;
    let fr = eval(f, 0.5 * (m + b))?;
    Ok(Panel::new(a, b, fa, fl, fm, fr, fb))
}

/// Adaptive Simpson for a fallible integrand on `[a, b]`.
pub fn integrate_1d_try<F>(
    mut f: F,
    a: f64,
    b: f64,
    tolerance: f64,
    max_subdivisions: usize,
) -> Result<Estimate, QuadratureError>
where
    F: FnMut(f64) -> Result<f64, QuadratureError>,
{
    if !(a.is_finite() && b.is_finite()) {
        return Err(QuadratureError::InvalidInput(format!("bounds must be finite, got [{a}, {b}]")));
    }
    if a == b {
        return Ok(Estimate { value: 0.0, error: 0.0 });
    }
    if a > b {
        let e = integrate_1d_try(f, b, a, tolerance, max_subdivisions)?;
        return Ok(Estimate { value: -e.value, error: e.error });
    }

    let h = (b - a) / INITIAL_PANELS as f64;
    let mut heap = BinaryHeap::with_capacity(2 * INITIAL_PANELS);
    let mut fa = eval(&mut f, a)?;
    for i in 0..INITIAL_PANELS {
        let pa = a + i as f64 * h;
        let pb = if i + 1 == INITIAL_PANELS { b } else { a + (i + 1) as f64 * h };
        let fm = eval(&mut f, 0.5 * (pa + pb))?;
        let fb = eval(&mut f, pb)?;
        heap.push(make_panel(&mut f, pa, pb, fa, fm, fb)?);
        fa = fb;
    }

    let mut done: Vec<Panel> = Vec::new();
    let total_error = |heap: &BinaryHeap<Panel>, done: &[Panel]| {
        heap.iter().chain(done).map(|p| p.error).sum::<f64>()
    };
    let mut err = total_error(&heap, &done);
    while err > tolerance {
        if heap.len() + done.len() >= max_subdivisions {
            let value = heap.iter().chain(&done).map(|p| p.value).sum();
            return Err(QuadratureError::NotConverged {
                estimate: value,
                error_bound: err,
                tolerance,
                max_subdivisions,
            });
        }
        let Some(p) = heap.pop() else { break };
        if !p.splittable() {
            done.push(p);
            continue;
        }
        let m = 0.5 * (p.a + p.b);
        let left = make_panel(&mut f, p.a, m, p.fa, p.fl, p.fm)?;
        let right = make_panel(&mut f, m, p.b, p.fm, p.fr, p.fb)?;
        err += left.error + right.error - p.error;
        heap.push(left);
        heap.push(right);
        // Re-sum now and then so cancellation in the running total cannot drift.
        if heap.len() % 64 == 0 || err <= tolerance {
            err = total_error(&heap, &done);
        }
    }
    if err > tolerance {
        let value = heap.iter().chain(&done).map(|p| p.value).sum();
        return Err(QuadratureError::NotConverged { estimate: value, error_bound: err, tolerance, max_subdivisions });
    }
    // Sum in position order for reproducible rounding.
    let mut panels: Vec<Panel> = heap.into_vec();
    panels.extend(done);
    panels.sort_by(|p, q| p.a.total_cmp(&q.a));
    let value = panels.iter().map(|p| p.value).sum();
    Ok(Estimate { value, error: err })
}

pub fn integrate_1d<F>(mut f: F, a: f64, b: f64, spec: &QuadratureSpec) -> Result<Estimate, QuadratureError>
where
    F: FnMut(f64) -> f64,
{
    spec.validate()?;
    integrate_1d_try(|x| Ok(f(x)), a, b, spec.absolute_tolerance, spec.max_subdivisions)
}

/// Iterated integral `int_{x0}^{x1} int_{lo(x)}^{hi(x)} f(x, y) dy dx`.
///
/// Where `hi(x) <= lo(x)` the inner integral is taken as zero.
pub fn integrate_2d<F, Y>(
    f: F,
    x_bounds: (f64, f64),
    y_bounds: Y,
    spec: &QuadratureSpec,
) -> Result<Estimate, QuadratureError>
where
    F: Fn(f64, f64) -> f64,
    Y: Fn(f64) -> (f64, f64),
{
    spec.validate()?;
    let (x0, x1) = x_bounds;
    if !(x0.is_finite() && x1.is_finite()) {
        return Err(QuadratureError::InvalidInput(format!(
            "x bounds must be finite, got [{x0}, {x1}]"
        )));
    }
    let width = (x1 - x0).abs();
    if width == 0.0 {
        return Ok(Estimate { value: 0.0, error: 0.0 });
    }
    let tol = spec.absolute_tolerance;
    let inner_tol = tol / (3.0 * width);
    let inner = |x: f64| -> Result<f64, QuadratureError> {
        let (lo, hi) = y_bounds(x);
        if !(lo.is_finite() && hi.is_finite()) {
            return Err(QuadratureError::InvalidInput(format!(
                "y bounds at x = {x} must be finite, got [{lo}, {hi}]"
            )));
        }
        if hi <= lo {
            return Ok(0.0);
        }
        integrate_1d_try(
            |y| {
                let v = f(x, y);
                if v.is_finite() {
                    Ok(v)
                } else {
                    Err(QuadratureError::NonFiniteIntegrand { x, y })
                }
            },
            lo,
            hi,
            inner_tol,
            spec.max_subdivisions,
        )
        .map(|e| e.value)
    };
    let outer = integrate_1d_try(inner, x0, x1, 2.0 * tol / 3.0, spec.max_subdivisions)?;
    Ok(Estimate { value: outer.value, error: outer.error + tol / 3.0 })
}
