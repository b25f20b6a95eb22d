use std::sync::Arc;

use nalgebra::{DMatrix, DVector};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use crate::error::{Error, Result};
use crate::model::{make_problem, Point, SmoothTerm, SplitProblem};
use crate::prox::{Halfspace, Simplex};

/// Daily asset returns split into training and test days.
#[derive(Debug, Clone)]
pub struct ReturnsDataset {
    /// Training returns, days x assets.
    pub returns: DMatrix<f64>,
    pub test_returns: DMatrix<f64>,
    /// Column means of the training returns.
    pub asset_means: Vec<f64>,
    /// Target return, `mean(asset_means)` by default.
    pub target: f64,
}

impl ReturnsDataset {
    pub fn new(returns: DMatrix<f64>, test_returns: DMatrix<f64>) -> Result<Self> {
        if returns.nrows() == 0 || returns.ncols() == 0 {
            return Err(Error::Dataset("returns dataset is empty".into()));
        }
        if test_returns.nrows() > 0 && test_returns.ncols() != returns.ncols() {
            return Err(Error::Dataset("test split has a different number of assets".into()));
        }
        let asset_means: Vec<f64> = returns.column_iter().map(|c| c.mean()).collect();
        let target = asset_means.iter().sum::<f64>() / asset_means.len() as f64;
        Ok(ReturnsDataset { returns, test_returns, asset_means, target })
    }

    pub fn num_assets(&self) -> usize {
        self.returns.ncols()
    }
}

/// `(1/m) sum_i (a_i^T x - b)^2` over the rows `a_i` of `returns`.
#[derive(Debug, Clone)]
pub struct TrackingRisk {
    returns: DMatrix<f64>,
    target: f64,
    lipschitz: f64,
}

impl TrackingRisk {
    pub fn new(returns: DMatrix<f64>, target: f64) -> Self {
        let m = returns.nrows() as f64;
        let gram = returns.transpose() * &returns;
        let lipschitz = 2.0 / m * power_iteration(&gram);
        TrackingRisk { returns, target, lipschitz }
    }

    fn residual(&self, x: &Point) -> DVector<f64> {
        let v = DVector::from_column_slice(x.values());
        (&self.returns * v).add_scalar(-self.target)
    }
}

impl SmoothTerm for TrackingRisk {
    fn value(&self, x: &Point) -> f64 {
        self.residual(x).norm_squared() / self.returns.nrows() as f64
    }

    fn gradient(&self, x: &Point) -> Point {
        let scale = 2.0 / self.returns.nrows() as f64;
        let g = self.returns.tr_mul(&self.residual(x)) * scale;
        x.with_values(g.as_slice().to_vec())
    }

    fn lipschitz(&self) -> f64 {
        self.lipschitz
    }

    fn dimension(&self) -> Option<usize> {
        Some(self.returns.ncols())
    }
}

/// Largest eigenvalue of a symmetric PSD matrix.
pub fn power_iteration(m: &DMatrix<f64>) -> f64 {
    let n = m.nrows();
    // deterministic start with no special alignment
    let mut v = DVector::from_fn(n, |i, _| 1.0 + 0.1 * ((i * 7919) % 13) as f64);
    v /= v.norm();
    let mut estimate = 0.0;
    for _ in 0..100_000 {
        let next = m * &v;
        let norm = next.norm();
        if norm == 0.0 {
            return 0.0;
        }
        let rayleigh = v.dot(&next);
        v = next / norm;
        if (rayleigh - estimate).abs() <= 1e-14 * rayleigh.abs() {
            return rayleigh;
        }
        estimate = rayleigh;
    }
    estimate
}

/// Risk minimisation over the simplex with a target-return constraint.
///
/// `g` is the simplex (so iterates `x_n` are portfolios), `f` the
/// halfspace `a_av^T x >= b`, `h` the empirical tracking risk.
pub fn build_markowitz(data: &ReturnsDataset) -> Result<SplitProblem> {
    if data.returns.nrows() == 0 {
        return Err(Error::Dataset("returns dataset is empty".into()));
    }
    let normal = Point::new(data.asset_means.clone())?;
    if normal.norm_squared() == 0.0 {
        return Err(Error::Dataset("mean asset returns are all zero".into()));
    }
    let f = Halfspace::new(normal, data.target)?;
    let h = TrackingRisk::new(data.returns.clone(), data.target);
    make_problem(Arc::new(f), Arc::new(Simplex), Arc::new(h), data.num_assets())
}

/// Risk of `x` on the held-out days, normalised like the training risk.
pub fn test_objective(data: &ReturnsDataset, x: &Point) -> Option<f64> {
    if data.test_returns.nrows() == 0 {
        return None;
    }
    Some(TrackingRisk::new(data.test_returns.clone(), data.target).value(x))
}

/// Gaussian returns with per-asset means `1 + 0.01 k` and volatility `0.02 (k+1)`.
pub fn synthetic_returns(days: usize, assets: usize, seed: u64) -> DMatrix<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let noise = Normal::new(0.0, 1.0).expect("unit normal");
    DMatrix::from_fn(days, assets, |_, k| 1.0 + 0.01 * k as f64 + 0.02 * (k + 1) as f64 * noise.sample(&mut rng))
}
