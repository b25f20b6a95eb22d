use crate::error::{Error, Result};
use crate::model::{Point, ProxTerm};

/// Projection onto `{y : a.y >= b}`.
pub fn project_halfspace(x: &Point, a: &Point, b: f64) -> Result<Point> {
    if a.len() != x.len() {
        return Err(Error::DimensionMismatch { expected: a.len(), got: x.len() });
    }
    let nsq = a.norm_squared();
    if nsq == 0.0 {
        return Err(Error::InvalidParameter("halfspace normal must be nonzero".into()));
    }
    let ax = a.dot(x);
    if ax >= b {
        return Ok(x.clone());
    }
    Ok(x.add_scaled((b - ax) / nsq, a))
}

pub fn project_box(x: &Point, lo: f64, hi: f64) -> Result<Point> {
    if !(lo <= hi) {
        return Err(Error::InvalidParameter(format!("box bounds out of order: {lo} > {hi}")));
    }
    Ok(x.map(|v| v.clamp(lo, hi)))
}

pub fn project_nonneg(x: &Point) -> Point {
    x.map(|v| v.max(0.0))
}

/// Indicator of `{y : a.y >= b}`.
#[derive(Debug, Clone)]
pub struct Halfspace {
    normal: Point,
    offset: f64,
}

impl Halfspace {
    pub fn new(normal: Point, offset: f64) -> Result<Self> {
        if normal.norm_squared() == 0.0 {
            return Err(Error::InvalidParameter("halfspace normal must be nonzero".into()));
        }
        Ok(Halfspace { normal, offset })
    }

    pub fn normal(&self) -> &Point {
        &self.normal
    }

    pub fn offset(&self) -> f64 {
        self.offset
    }
}

impl ProxTerm for Halfspace {
    fn prox(&self, x: &Point, _gamma: f64) -> Result<Point> {
        project_halfspace(x, &self.normal, self.offset)
    }

    fn feasibility_distance(&self, x: &Point) -> f64 {
        let gap = self.offset - self.normal.dot(x);
        if gap > 0.0 {
            gap / self.normal.norm()
        } else {
            0.0
        }
    }

    fn is_constraint(&self) -> bool {
        true
    }

    fn dimension(&self) -> Option<usize> {
        Some(self.normal.len())
    }
}

/// Indicator of the box `[lo, hi]^d`.
#[derive(Debug, Clone, Copy)]
pub struct BoxSet {
    lo: f64,
    hi: f64,
}

impl BoxSet {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if !(lo <= hi) {
            return Err(Error::InvalidParameter(format!("box bounds out of order: {lo} > {hi}")));
        }
        Ok(BoxSet { lo, hi })
    }
}

impl ProxTerm for BoxSet {
    fn prox(&self, x: &Point, _gamma: f64) -> Result<Point> {
        project_box(x, self.lo, self.hi)
    }

    fn feasibility_distance(&self, x: &Point) -> f64 {
        x.values()
            .iter()
            .map(|&v| {
                let d = v - v.clamp(self.lo, self.hi);
                d * d
            })
            .sum::<f64>()
            .sqrt()
    }

    fn is_constraint(&self) -> bool {
        true
    }
}

/// Indicator of the nonnegative orthant.
#[derive(Debug, Clone, Copy, Default)]
pub struct NonnegOrthant;

impl ProxTerm for NonnegOrthant {
    fn prox(&self, x: &Point, _gamma: f64) -> Result<Point> {
        Ok(project_nonneg(x))
    }

    fn feasibility_distance(&self, x: &Point) -> f64 {
        x.values().iter().map(|&v| v.min(0.0).powi(2)).sum::<f64>().sqrt()
    }

    fn is_constraint(&self) -> bool {
        true
    }
}
