use std::collections::HashSet;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::model::{make_problem, Point, SmoothTerm, SplitProblem};
use crate::prox::{BoxSet, NuclearNorm};

pub const RATING_MIN: f64 = 1.0;
pub const RATING_MAX: f64 = 5.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Partition {
    Train,
    Test,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rating {
    pub row: usize,
    pub col: usize,
    pub value: f64,
    pub partition: Partition,
}

/// Observed entries of a `num_users x num_movies` rating matrix.
#[derive(Debug, Clone)]
pub struct RatingsDataset {
    pub observed: Vec<Rating>,
    pub num_users: usize,
    pub num_movies: usize,
}

impl RatingsDataset {
    /// Checks indices, the rating range and duplicates within a partition.
    pub fn new(observed: Vec<Rating>, num_users: usize, num_movies: usize) -> Result<Self> {
        let mut seen = HashSet::new();
        for r in &observed {
            if r.row >= num_users || r.col >= num_movies {
                return Err(Error::Dataset(format!("entry ({}, {}) outside {num_users}x{num_movies}", r.row, r.col)));
            }
            if !(RATING_MIN..=RATING_MAX).contains(&r.value) {
                return Err(Error::Dataset(format!("rating {} outside [1, 5]", r.value)));
            }
            if !seen.insert((r.row, r.col, r.partition)) {
                return Err(Error::Dataset(format!("duplicate entry ({}, {})", r.row, r.col)));
            }
        }
        Ok(RatingsDataset { observed, num_users, num_movies })
    }

    pub fn partition(&self, p: Partition) -> impl Iterator<Item = &Rating> {
        self.observed.iter().filter(move |r| r.partition == p)
    }

    /// Root mean squared error of a row-major matrix on one partition.
    pub fn rmse(&self, x: &Point, p: Partition) -> Option<f64> {
        let v = x.values();
        let (sum, count) = self.partition(p).fold((0.0, 0usize), |(s, c), r| {
            let e = v[r.row * self.num_movies + r.col] - r.value;
            (s + e * e, c + 1)
        });
        (count > 0).then(|| (sum / count as f64).sqrt())
    }

    /// RMSE of predicting a constant on one partition.
    pub fn constant_rmse(&self, value: f64, p: Partition) -> Option<f64> {
        let x = Point::from_raw(vec![value; self.num_users * self.num_movies], Some((self.num_users, self.num_movies)));
        self.rmse(&x, p)
    }
}

/// `1/2 sum_{(i,j) observed} (X_ij - b_ij)^2`
#[derive(Debug, Clone)]
pub struct MaskedSquares {
    rows: usize,
    cols: usize,
    entries: Vec<(usize, f64)>,
}

impl MaskedSquares {
    pub fn new(rows: usize, cols: usize, entries: Vec<(usize, f64)>) -> Self {
        MaskedSquares { rows, cols, entries }
    }
}

impl SmoothTerm for MaskedSquares {
    fn value(&self, x: &Point) -> f64 {
        let v = x.values();
        0.5 * self.entries.iter().map(|&(k, b)| (v[k] - b).powi(2)).sum::<f64>()
    }

    fn gradient(&self, x: &Point) -> Point {
        let v = x.values();
        let mut g = vec![0.0; v.len()];
        for &(k, b) in &self.entries {
            g[k] = v[k] - b;
        }
        x.with_values(g)
    }

    /// The sampling mask is an orthogonal projection.
    fn lipschitz(&self) -> f64 {
        1.0
    }

    fn dimension(&self) -> Option<usize> {
        Some(self.rows * self.cols)
    }
}

/// Nuclear-norm regularised completion on the training entries, with
/// iterates `x_n` kept in the box `[1, 5]`.
pub fn build_matrix_completion(data: &RatingsDataset, rho: f64) -> Result<SplitProblem> {
    let entries: Vec<(usize, f64)> =
        data.partition(Partition::Train).map(|r| (r.row * data.num_movies + r.col, r.value)).collect();
    if entries.is_empty() {
        return Err(Error::Dataset("no training observations".into()));
    }
    let (m, p) = (data.num_users, data.num_movies);
    let f = NuclearNorm::new(rho, m, p)?;
    let g = BoxSet::new(RATING_MIN, RATING_MAX)?;
    let h = MaskedSquares::new(m, p, entries);
    make_problem(Arc::new(f), Arc::new(g), Arc::new(h), m * p)
}

/// Rank-one `u v^T` with `u`, `v` uniform in `[1, sqrt 5]`, so every entry
/// lies in `[1, 5]`. Each entry is observed (train) with probability
/// `observed_fraction`; the rest form the test partition. The mask is
/// redrawn until every row and column has `min(2, len)` training entries,
/// which rank-one recovery needs.
pub fn synthetic_low_rank(
    rows: usize,
    cols: usize,
    observed_fraction: f64,
    seed: u64,
) -> Result<(RatingsDataset, Point)> {
    if rows == 0 || cols == 0 {
        return Err(Error::InvalidParameter("matrix must be non-empty".into()));
    }
    if !(observed_fraction > 0.0 && observed_fraction <= 1.0) {
        return Err(Error::InvalidParameter(format!("observed fraction must lie in (0, 1], got {observed_fraction}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let hi = RATING_MAX.sqrt();
    let u: Vec<f64> = (0..rows).map(|_| rng.random_range(1.0..hi)).collect();
    let v: Vec<f64> = (0..cols).map(|_| rng.random_range(1.0..hi)).collect();
    let truth: Vec<f64> = u.iter().flat_map(|ui| v.iter().map(move |vj| ui * vj)).collect();
    let mask = loop {
        let mask: Vec<bool> = (0..rows * cols).map(|_| rng.random::<f64>() < observed_fraction).collect();
        let rows_ok = (0..rows).all(|i| (0..cols).filter(|&j| mask[i * cols + j]).count() >= cols.min(2));
        let cols_ok = (0..cols).all(|j| (0..rows).filter(|&i| mask[i * cols + j]).count() >= rows.min(2));
        if rows_ok && cols_ok {
            break mask;
        }
    };
    let observed = (0..rows * cols)
        .map(|k| Rating {
            row: k / cols,
            col: k % cols,
            value: truth[k],
            partition: if mask[k] { Partition::Train } else { Partition::Test },
        })
        .collect();
    let data = RatingsDataset::new(observed, rows, cols)?;
    Ok((data, Point::matrix(rows, cols, truth)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_out_of_range_and_duplicates() {
        let r = |v, p| Rating { row: 0, col: 0, value: v, partition: p };
        assert!(RatingsDataset::new(vec![r(6.0, Partition::Train)], 1, 1).is_err());
        assert!(RatingsDataset::new(vec![r(3.0, Partition::Train), r(4.0, Partition::Train)], 1, 1).is_err());
        assert!(RatingsDataset::new(vec![r(3.0, Partition::Train), r(4.0, Partition::Test)], 1, 1).is_ok());
    }

    #[test]
    fn mask_gradient_is_contraction() {
        let h = MaskedSquares::new(2, 2, vec![(0, 1.0), (3, 2.0)]);
        let x = Point::matrix(2, 2, vec![3.0, 7.0, -1.0, 2.5]).unwrap();
        let y = Point::matrix(2, 2, vec![0.0, 1.0, 4.0, 2.0]).unwrap();
        let gx = h.gradient(&x);
        assert_eq!(gx.values(), &[2.0, 0.0, 0.0, 0.5]);
        assert!(gx.distance(&h.gradient(&y)) <= x.distance(&y));
    }

    #[test]
    fn synthetic_entries_in_range() {
        let (data, truth) = synthetic_low_rank(6, 6, 0.6, 1).unwrap();
        assert_eq!(data.observed.len(), 36);
        assert!(truth.values().iter().all(|v| (1.0..=5.0).contains(v)));
        assert!(data.partition(Partition::Train).count() > 0);
    }
}
