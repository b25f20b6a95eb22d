use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use crate::error::Result;
use crate::model::{make_problem, Point, ProxTerm, SplitProblem, SquaredDistance};
use crate::prox::{project_nonneg, NonnegOrthant, PsdCone};

/// Nearest doubly nonnegative matrix to `z`: `h = 1/2 ||X - Z||_F^2`,
/// `g` the PSD cone (iterates are exactly PSD), `f` the nonnegative orthant.
pub fn build_dnn_projection(z: &Point) -> Result<SplitProblem> {
    let d = z.require_square()?;
    let h = SquaredDistance::new(z.clone(), 1.0)?;
    make_problem(Arc::new(NonnegOrthant), Arc::new(PsdCone::new(d)), Arc::new(h), d * d)
}

/// `(A + A^T) / 2` with standard normal `A`.
pub fn random_symmetric(d: usize, seed: u64) -> Point {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let normal = Normal::new(0.0, 1.0).expect("unit normal");
    let a: Vec<f64> = (0..d * d).map(|_| normal.sample(&mut rng)).collect();
    let mut s = vec![0.0; d * d];
    for i in 0..d {
        for j in 0..d {
            s[i * d + j] = 0.5 * (a[i * d + j] + a[j * d + i]);
        }
    }
    Point::from_raw(s, Some((d, d)))
}

/// Dykstra's alternating projections between the PSD cone and the
/// nonnegative orthant, started at `z`. Returns the nonnegative iterate
/// and the number of sweeps.
pub fn dykstra_dnn(z: &Point, tol: f64, max_sweeps: usize) -> Result<(Point, usize)> {
    let d = z.require_square()?;
    let cone = PsdCone::new(d);
    let mut x = z.clone();
    let mut p = Point::from_raw(vec![0.0; z.len()], z.shape());
    let mut q = p.clone();
    for sweep in 1..=max_sweeps {
        let y = cone.prox(&x.add_scaled(1.0, &p), 1.0)?;
        p = x.add_scaled(1.0, &p).sub(&y);
        let next = project_nonneg(&y.add_scaled(1.0, &q));
        q = y.add_scaled(1.0, &q).sub(&next);
        let change = next.distance(&x);
        x = next;
        if change <= tol * x.norm().max(1.0) {
            return Ok((x, sweep));
        }
    }
    Ok((x, max_sweeps))
}

/// Stopping rule against a reference solution: the smallest entry is at
/// least `min_entry_floor` and `||X - Z||_F` is within `distance_slack`
/// (relative) of the reference distance.
#[derive(Debug, Clone, Copy)]
pub struct DnnStopCriteria {
    pub reference_distance: f64,
    pub min_entry_floor: f64,
    pub distance_slack: f64,
}

impl DnnStopCriteria {
    pub fn from_reference(z: &Point, reference: &Point) -> Self {
        DnnStopCriteria { reference_distance: reference.distance(z), min_entry_floor: -1e-9, distance_slack: 1e-6 }
    }

    pub fn satisfied(&self, z: &Point, x: &Point) -> bool {
        let min = x.values().iter().copied().fold(f64::INFINITY, f64::min);
        min >= self.min_entry_floor && x.distance(z) <= self.reference_distance * (1.0 + self.distance_slack)
    }
}
