//! Regions, sensor fields, intruder paths and the Boolean sensing model.
//!
//! Coordinates: the protected target occupies `x <= 0`. An intruder enters at
//! `(S, 0)` and walks a straight line in the `-x` direction, ending at
//! `(S - d, 0)`. A sensor detects the intruder when the closed disk of radius
//! `r` around it touches that path, i.e. when the sensor lies in the capsule
//! of radius `r` around the path segment.

use std::f64::consts::PI;

use crate::error::DomainError;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    pub fn distance(self, other: Point) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }
}

/// Axis-aligned rectangle with `x_min < x_max`, `y_min < y_max`.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Rect {
    pub x_min: f64,
    pub x_max: f64,
    pub y_min: f64,
    pub y_max: f64,
}

impl Rect {
    pub fn new(x_min: f64, x_max: f64, y_min: f64, y_max: f64) -> Result<Self, DomainError> {
        let r = Rect { x_min, x_max, y_min, y_max };
        r.validate()?;
        Ok(r)
    }

    pub fn validate(&self) -> Result<(), DomainError> {
        let finite = [self.x_min, self.x_max, self.y_min, self.y_max]
            .iter()
            .all(|v| v.is_finite());
        if !finite || self.x_min >= self.x_max || self.y_min >= self.y_max {
            return Err(DomainError::InvalidRegion(format!(
                "need finite x_min < x_max and y_min < y_max, got {self:?}"
            )));
        }
        Ok(())
    }

    pub fn width(&self) -> f64 {
        self.x_max - self.x_min
    }

    pub fn height(&self) -> f64 {
        self.y_max - self.y_min
    }

    pub fn area(&self) -> f64 {
        self.width() * self.height()
    }

    pub fn diagonal(&self) -> f64 {
        self.width().hypot(self.height())
    }

    pub fn contains(&self, p: Point) -> bool {
        p.x >= self.x_min && p.x <= self.x_max && p.y >= self.y_min && p.y <= self.y_max
    }

    /// True when the closed rectangle `inner` lies inside `self`.
    pub fn contains_rect(&self, inner: &Rect) -> bool {
        inner.x_min >= self.x_min
            && inner.x_max <= self.x_max
            && inner.y_min >= self.y_min
            && inner.y_max <= self.y_max
    }
}

/// Region of interest.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Region {
    Rectangle(Rect),
    /// The half-plane `x >= 0`, unbounded.
    HalfPlane,
}

impl Region {
    pub fn area(&self) -> f64 {
        match self {
            Region::Rectangle(r) => r.area(),
            Region::HalfPlane => f64::INFINITY,
        }
    }

    pub fn contains(&self, p: Point) -> bool {
        match self {
            Region::Rectangle(r) => r.contains(p),
            Region::HalfPlane => p.x >= 0.0,
        }
    }

    pub fn as_rect(&self) -> Option<&Rect> {
        match self {
            Region::Rectangle(r) => Some(r),
            Region::HalfPlane => None,
        }
    }
}

/// Realized deployment: sensor positions with a shared sensing range.
#[derive(Debug, Clone, PartialEq)]
pub struct SensorField {
    pub positions: Vec<Point>,
    sensing_range: f64,
}

impl SensorField {
    pub fn new(positions: Vec<Point>, sensing_range: f64) -> Result<Self, DomainError> {
        check_range(sensing_range)?;
        Ok(SensorField { positions, sensing_range })
    }

    pub fn sensing_range(&self) -> f64 {
        self.sensing_range
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    /// Single-sensing detection: at least one sensor sees the path.
    pub fn detects(&self, scenario: &IntruderScenario) -> bool {
        self.positions
            .iter()
            .any(|&p| detects(p, scenario, self.sensing_range))
    }
}

pub(crate) fn check_range(r: f64) -> Result<(), DomainError> {
    if r.is_finite() && r > 0.0 {
        Ok(())
    } else {
        Err(DomainError::InvalidParameter(format!(
            "sensing range must be finite and > 0, got {r}"
        )))
    }
}

/// Straight-line intruder: starts at `(S, 0)`, travels `d` toward the
/// target at `x = 0`. `D` is the maximum distance it may travel before it
/// must have been detected.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntruderScenario {
    start_s: f64,
    distance_d: f64,
    max_permitted: f64,
}

impl IntruderScenario {
    /// Scenario whose permitted distance `D` equals the traveled distance `d`.
    pub fn new(start_s: f64, distance_d: f64) -> Result<Self, DomainError> {
        Self::with_max_permitted(start_s, distance_d, distance_d)
    }

    pub fn with_max_permitted(
        start_s: f64,
        distance_d: f64,
        max_permitted: f64,
    ) -> Result<Self, DomainError> {
        let all_finite = start_s.is_finite() && distance_d.is_finite() && max_permitted.is_finite();
        if !all_finite || start_s < 0.0 || distance_d < 0.0 || max_permitted < 0.0 {
            return Err(DomainError::InvalidScenario(format!(
                "S, d, D must be finite and >= 0 (S={start_s}, d={distance_d}, D={max_permitted})"
            )));
        }
        if distance_d > start_s {
            return Err(DomainError::InvalidScenario(format!(
                "d > S: intruder would pass the target boundary (S={start_s}, d={distance_d})"
            )));
        }
        if max_permitted > start_s {
            return Err(DomainError::InvalidScenario(format!(
                "D > S (S={start_s}, D={max_permitted})"
            )));
        }
        Ok(IntruderScenario { start_s, distance_d, max_permitted })
    }

    pub fn start_s(&self) -> f64 {
        self.start_s
    }

    pub fn distance_d(&self) -> f64 {
        self.distance_d
    }

    pub fn max_permitted(&self) -> f64 {
        self.max_permitted
    }

    pub fn entry(&self) -> Point {
        Point::new(self.start_s, 0.0)
    }

    pub fn end(&self) -> Point {
        Point::new(self.start_s - self.distance_d, 0.0)
    }

    pub fn capsule(&self, r: f64) -> Capsule {
        Capsule { a: self.end(), b: self.entry(), radius: r }
    }
}

/// Points within `radius` of the segment `a`–`b`: a rectangle plus two
/// half-disks.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Capsule {
    pub a: Point,
    pub b: Point,
    pub radius: f64,
}

impl Capsule {
    pub fn length(&self) -> f64 {
        self.a.distance(self.b)
    }

    pub fn area(&self) -> f64 {
        capsule_area(self.length(), self.radius)
    }

    pub fn contains(&self, p: Point) -> bool {
        point_segment_distance(p, self.a, self.b) <= self.radius
    }

    /// Axis-aligned bounding box.
    pub fn bounds(&self) -> Rect {
        Rect {
            x_min: self.a.x.min(self.b.x) - self.radius,
            x_max: self.a.x.max(self.b.x) + self.radius,
            y_min: self.a.y.min(self.b.y) - self.radius,
            y_max: self.a.y.max(self.b.y) + self.radius,
        }
    }
}

/// `2 * length * r + pi * r^2`.
pub fn capsule_area(length: f64, r: f64) -> f64 {
    2.0 * length * r + PI * r * r
}

/// Euclidean distance from `p` to the closest point of segment `ab`.
pub fn point_segment_distance(p: Point, a: Point, b: Point) -> f64 {
    let (abx, aby) = (b.x - a.x, b.y - a.y);
    let len2 = abx * abx + aby * aby;
    if len2 == 0.0 {
        return p.distance(a);
    }
    let t = (((p.x - a.x) * abx + (p.y - a.y) * aby) / len2).clamp(0.0, 1.0);
    p.distance(Point::new(a.x + t * abx, a.y + t * aby))
}

/// Boolean sensing: closed disk, so distance exactly `r` counts.
pub fn detects(sensor: Point, scenario: &IntruderScenario, r: f64) -> bool {
    point_segment_distance(sensor, scenario.entry(), scenario.end()) <= r
}

/// Fraction of grid cells (sampled at their centers) within sensing range
/// of at least one sensor. `resolution` is the cell count per axis.
pub fn coverage_fraction(
    field: &SensorField,
    region: &Rect,
    resolution: usize,
) -> Result<f64, DomainError> {
    region.validate()?;
    if resolution < 2 {
        return Err(DomainError::InvalidParameter(format!(
            "resolution must be >= 2, got {resolution}"
        )));
    }
    let n = resolution;
    let (dx, dy) = (region.width() / n as f64, region.height() / n as f64);
    let cx = |i: usize| region.x_min + (i as f64 + 0.5) * dx;
    let cy = |j: usize| region.y_min + (j as f64 + 0.5) * dy;
    let r = field.sensing_range();
    let r2 = r * r;
    let mut covered = vec![false; n * n];

    // Cell index range whose centers can fall inside [lo, hi].
    let span = |lo: f64, hi: f64, origin: f64, step: f64| -> Option<(usize, usize)> {
        let first = ((lo - origin) / step - 0.5).ceil().max(0.0);
        let last = ((hi - origin) / step - 0.5).floor().min(n as f64 - 1.0);
        (first <= last).then_some((first as usize, last as usize))
    };

    for s in &field.positions {
        let Some((i0, i1)) = span(s.x - r, s.x + r, region.x_min, dx) else {
            continue;
        };
        let Some((j0, j1)) = span(s.y - r, s.y + r, region.y_min, dy) else {
            continue;
        };
        for j in j0..=j1 {
            let ddy = cy(j) - s.y;
            for i in i0..=i1 {
                let ddx = cx(i) - s.x;
                if ddx * ddx + ddy * ddy <= r2 {
                    covered[j * n + i] = true;
                }
            }
        }
    }
    let hits = covered.iter().filter(|&&c| c).count();
    Ok(hits as f64 / (n * n) as f64)
}
