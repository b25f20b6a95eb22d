use nalgebra::{DMatrix, SymmetricEigen};

use super::{from_matrix, to_matrix};
use crate::error::Result;
use crate::model::{Point, ProxTerm};

fn symmetric_part(m: &DMatrix<f64>) -> DMatrix<f64> {
    (m + m.transpose()) * 0.5
}

fn clip_eigen(sym: DMatrix<f64>) -> DMatrix<f64> {
    let eig = SymmetricEigen::new(sym);
    let clipped = eig.eigenvalues.map(|l| l.max(0.0));
    let vectors = &eig.eigenvectors;
    let scaled = vectors * DMatrix::from_diagonal(&clipped);
    let out = scaled * vectors.transpose();
    symmetric_part(&out)
}

/// Projection of a square matrix onto the cone of symmetric positive
/// semidefinite matrices (symmetrise, clip negative eigenvalues).
pub fn project_psd(x: &Point) -> Result<Point> {
    x.require_square()?;
    let m = to_matrix(x, None)?;
    Ok(from_matrix(&clip_eigen(symmetric_part(&m))))
}

/// Indicator of the PSD cone on `d x d` matrices.
#[derive(Debug, Clone, Copy)]
pub struct PsdCone {
    order: usize,
}

impl PsdCone {
    pub fn new(order: usize) -> Self {
        PsdCone { order }
    }

    fn matrix(&self, x: &Point) -> Result<DMatrix<f64>> {
        to_matrix(x, Some((self.order, self.order)))
    }
}

impl ProxTerm for PsdCone {
    fn prox(&self, x: &Point, _gamma: f64) -> Result<Point> {
        let m = self.matrix(x)?;
        if m.nrows() != m.ncols() {
            return Err(crate::error::Error::NotSquare { rows: m.nrows(), cols: m.ncols() });
        }
        let out = from_matrix(&clip_eigen(symmetric_part(&m)));
        Ok(x.with_values(out.into_values()))
    }

    fn feasibility_distance(&self, x: &Point) -> f64 {
        match self.matrix(x) {
            Ok(m) if m.nrows() == m.ncols() => {
                let sym = symmetric_part(&m);
                let skew = (&m - &sym).norm_squared();
                let neg: f64 = SymmetricEigen::new(sym).eigenvalues.iter().map(|l| l.min(0.0).powi(2)).sum();
                (skew + neg).sqrt()
            }
            _ => f64::INFINITY,
        }
    }

    fn is_constraint(&self) -> bool {
        true
    }

    fn dimension(&self) -> Option<usize> {
        Some(self.order * self.order)
    }
}

/// Smallest eigenvalue of the symmetric part of a square matrix point.
pub fn min_eigenvalue(x: &Point) -> Result<f64> {
    x.require_square()?;
    let m = to_matrix(x, None)?;
    Ok(SymmetricEigen::new(symmetric_part(&m)).eigenvalues.min())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diagonal_case_clips() {
        let x = Point::matrix(2, 2, vec![1.0, 0.0, 0.0, -2.0]).unwrap();
        let y = project_psd(&x).unwrap();
        for (a, b) in y.values().iter().zip([1.0, 0.0, 0.0, 0.0]) {
            assert!((a - b).abs() < 1e-14);
        }
    }

    #[test]
    fn psd_input_is_fixed() {
        let x = Point::matrix(2, 2, vec![2.0, 1.0, 1.0, 2.0]).unwrap();
        let y = project_psd(&x).unwrap();
        assert!(y.distance(&x) < 1e-10);
    }

    #[test]
    fn non_square_rejected() {
        let x = Point::matrix(2, 3, vec![0.0; 6]).unwrap();
        assert!(project_psd(&x).is_err());
        assert!(project_psd(&Point::zeros(4)).is_err());
    }

    #[test]
    fn cone_term_accepts_flat_points() {
        let cone = PsdCone::new(2);
        let x = Point::new(vec![1.0, 0.0, 0.0, -2.0]).unwrap();
        let y = cone.prox(&x, 1.0).unwrap();
        assert_eq!(y.shape(), None);
        assert!((cone.feasibility_distance(&x) - 2.0).abs() < 1e-12);
        assert!(cone.feasibility_distance(&y) < 1e-12);
    }
}
