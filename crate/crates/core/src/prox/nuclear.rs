use nalgebra::{DMatrix, DVector};

use super::{from_matrix, to_matrix};
use crate::error::{Error, Result};
use crate::model::{Point, ProxTerm};

const SVD_EPS: f64 = 1e-15;
const SVD_MAX_ITERS: usize = 10_000;

fn svd(m: DMatrix<f64>) -> Result<nalgebra::SVD<f64, nalgebra::Dyn, nalgebra::Dyn>> {
    m.try_svd(true, true, SVD_EPS, SVD_MAX_ITERS).ok_or(Error::SvdFailure)
}

fn soft_threshold(m: DMatrix<f64>, threshold: f64) -> Result<DMatrix<f64>> {
    let dec = svd(m)?;
    let shrunk: DVector<f64> = dec.singular_values.map(|s| (s - threshold).max(0.0));
    let u = dec.u.ok_or(Error::SvdFailure)?;
    let v_t = dec.v_t.ok_or(Error::SvdFailure)?;
    Ok(u * DMatrix::from_diagonal(&shrunk) * v_t)
}

/// Singular value soft-thresholding: `prox` of `threshold * ||X||_*`.
pub fn prox_nuclear(x: &Point, threshold: f64) -> Result<Point> {
    if !(threshold > 0.0) {
        return Err(Error::InvalidParameter(format!("threshold must be positive, got {threshold}")));
    }
    x.require_shape()?;
    let m = to_matrix(x, None)?;
    Ok(from_matrix(&soft_threshold(m, threshold)?))
}

/// Sum of singular values.
pub fn nuclear_norm(x: &Point) -> Result<f64> {
    x.require_shape()?;
    let m = to_matrix(x, None)?;
    Ok(svd(m)?.singular_values.sum())
}

/// `weight * ||X||_*` on `rows x cols` matrices.
#[derive(Debug, Clone, Copy)]
pub struct NuclearNorm {
    weight: f64,
    rows: usize,
    cols: usize,
}

impl NuclearNorm {
    pub fn new(weight: f64, rows: usize, cols: usize) -> Result<Self> {
        if !(weight >= 0.0 && weight.is_finite()) {
            return Err(Error::InvalidParameter(format!("weight must be nonnegative, got {weight}")));
        }
        Ok(NuclearNorm { weight, rows, cols })
    }
}

impl ProxTerm for NuclearNorm {
    fn prox(&self, x: &Point, gamma: f64) -> Result<Point> {
        if self.weight == 0.0 {
            return Ok(x.clone());
        }
        let m = to_matrix(x, Some((self.rows, self.cols)))?;
        let out = from_matrix(&soft_threshold(m, gamma * self.weight)?);
        Ok(x.with_values(out.into_values()))
    }

    fn finite_part(&self, x: &Point) -> f64 {
        match to_matrix(x, Some((self.rows, self.cols))).and_then(svd) {
            Ok(dec) => self.weight * dec.singular_values.sum(),
            Err(_) => f64::NAN,
        }
    }

    fn dimension(&self) -> Option<usize> {
        Some(self.rows * self.cols)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_matrix_stays_zero() {
        let x = Point::zeros_matrix(3, 4);
        assert_eq!(prox_nuclear(&x, 1.0).unwrap().values(), x.values());
    }

    #[test]
    fn rank_one_soft_threshold() {
        // 5 * u v^T with unit u = (0.6, 0.8), v = (1, 0, 0)
        let x = Point::matrix(2, 3, vec![3.0, 0.0, 0.0, 4.0, 0.0, 0.0]).unwrap();
        let y = prox_nuclear(&x, 2.0).unwrap();
        let expected = [1.8, 0.0, 0.0, 2.4, 0.0, 0.0];
        for (a, b) in y.values().iter().zip(expected) {
            assert!((a - b).abs() < 1e-12, "{a} vs {b}");
        }
        assert!((nuclear_norm(&y).unwrap() - 3.0).abs() < 1e-12);
    }

    #[test]
    fn exact_tie_maps_to_zero() {
        let x = Point::matrix(2, 2, vec![2.0, 0.0, 0.0, 1.0]).unwrap();
        let y = prox_nuclear(&x, 2.0).unwrap();
        assert!(y.values().iter().all(|v| v.abs() < 1e-15));
    }

    #[test]
    fn requires_shape() {
        assert!(matches!(prox_nuclear(&Point::zeros(4), 1.0), Err(Error::MissingShape)));
    }
}
