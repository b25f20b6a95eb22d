use crate::error::Result;
use crate::model::{Point, ProxTerm};

/// Euclidean projection onto `{y : y >= 0, sum(y) = 1}` by sort-and-threshold.
pub fn project_simplex(x: &Point) -> Point {
    let mut sorted: Vec<f64> = x.values().to_vec();
    sorted.sort_by(|a, b| b.total_cmp(a));
    let mut cumulative = 0.0;
    let mut theta = 0.0;
    for (k, &v) in sorted.iter().enumerate() {
        cumulative += v;
        let candidate = (cumulative - 1.0) / (k + 1) as f64;
        if v - candidate > 0.0 {
            theta = candidate;
        }
    }
    let y = x.values().iter().map(|&v| (v - theta).max(0.0)).collect();
    x.with_values(y)
}

#[derive(Debug, Clone, Copy, Default)]
pub struct Simplex;

impl ProxTerm for Simplex {
    fn prox(&self, x: &Point, _gamma: f64) -> Result<Point> {
        Ok(project_simplex(x))
    }

    fn feasibility_distance(&self, x: &Point) -> f64 {
        x.distance(&project_simplex(x))
    }

    fn is_constraint(&self) -> bool {
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[f64]) -> Point {
        Point::new(v.to_vec()).unwrap()
    }

    #[test]
    fn interior_point_is_fixed() {
        let y = project_simplex(&p(&[0.2, 0.3, 0.5]));
        for (a, b) in y.values().iter().zip([0.2, 0.3, 0.5]) {
            assert!((a - b).abs() < 1e-15);
        }
    }

    #[test]
    fn dominant_coordinate_saturates() {
        assert_eq!(project_simplex(&p(&[10.0, 0.0, 0.0])).values(), &[1.0, 0.0, 0.0]);
    }

    #[test]
    fn ties_split_evenly() {
        let y = project_simplex(&p(&[3.0, 3.0, -1.0]));
        assert_eq!(y.values(), &[0.5, 0.5, 0.0]);
    }

    #[test]
    fn sum_is_one_for_awkward_inputs() {
        let y = project_simplex(&p(&[1e-17, -1e9, 0.3, 0.3, 0.3, 1e-12]));
        let s: f64 = y.values().iter().sum();
        assert!((s - 1.0).abs() <= 1e-12);
        assert!(y.values().iter().all(|&v| v >= 0.0));
    }
}
