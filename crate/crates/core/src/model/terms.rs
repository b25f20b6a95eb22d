use std::fmt;

use nalgebra::{DMatrix, DVector};

use super::point::Point;
use crate::error::{Error, Result};

/// Relative tolerance under which an indicator term treats a point as feasible.
pub const FEASIBILITY_TOL: f64 = 1e-9;

/// `true` when `distance` is within the indicator tolerance for `x`.
pub fn within_tolerance(distance: f64, x: &Point) -> bool {
    distance <= FEASIBILITY_TOL * x.norm().max(1.0)
}

/// A convex term accessed through its proximal operator.
///
/// Terms that contain a set constraint report the distance to that set in
/// [`feasibility_distance`](ProxTerm::feasibility_distance) and the value of
/// their remaining finite part in [`finite_part`](ProxTerm::finite_part).
pub trait ProxTerm: Send + Sync + fmt::Debug {
    /// `argmin_z term(z) + ||z - x||^2 / (2 gamma)`
    fn prox(&self, x: &Point, gamma: f64) -> Result<Point>;

    /// Value of the term with any indicator part dropped.
    fn finite_part(&self, _x: &Point) -> f64 {
        0.0
    }

    fn feasibility_distance(&self, _x: &Point) -> f64 {
        0.0
    }

    /// Whether the term carries a set constraint.
    fn is_constraint(&self) -> bool {
        false
    }

    fn dimension(&self) -> Option<usize> {
        None
    }

    fn is_feasible(&self, x: &Point) -> bool {
        within_tolerance(self.feasibility_distance(x), x)
    }

    /// Extended-real value: `+inf` outside the constraint set.
    fn value(&self, x: &Point) -> f64 {
        if self.is_feasible(x) {
            self.finite_part(x)
        } else {
            f64::INFINITY
        }
    }
}

/// A convex differentiable term with `lipschitz`-Lipschitz gradient.
pub trait SmoothTerm: Send + Sync + fmt::Debug {
    fn value(&self, x: &Point) -> f64;
    fn gradient(&self, x: &Point) -> Point;
    fn lipschitz(&self) -> f64;

    fn dimension(&self) -> Option<usize> {
        None
    }
}

/// The zero function; its prox is the identity.
#[derive(Debug, Clone, Copy, Default)]
pub struct Zero;

impl ProxTerm for Zero {
    fn prox(&self, x: &Point, _gamma: f64) -> Result<Point> {
        Ok(x.clone())
    }
}

/// `weight/2 * ||x - center||^2`
#[derive(Debug, Clone)]
pub struct SquaredDistance {
    center: Point,
    weight: f64,
}

impl SquaredDistance {
    pub fn new(center: Point, weight: f64) -> Result<Self> {
        if !(weight > 0.0 && weight.is_finite()) {
            return Err(Error::InvalidParameter(format!("weight must be positive, got {weight}")));
        }
        Ok(SquaredDistance { center, weight })
    }

    /// `1/2 ||x||^2` on `dim` coordinates.
    pub fn half_norm(dim: usize) -> Self {
        SquaredDistance { center: Point::zeros(dim), weight: 1.0 }
    }

    pub fn center(&self) -> &Point {
        &self.center
    }
}

impl SmoothTerm for SquaredDistance {
    fn value(&self, x: &Point) -> f64 {
        0.5 * self.weight * x.sub(&self.center).norm_squared()
    }

    fn gradient(&self, x: &Point) -> Point {
        x.sub(&self.center).scale(self.weight)
    }

    fn lipschitz(&self) -> f64 {
        self.weight
    }

    fn dimension(&self) -> Option<usize> {
        Some(self.center.len())
    }
}

/// `1/2 x^T H x + q^T x + c` with symmetric positive semidefinite `H`.
#[derive(Debug, Clone)]
pub struct Quadratic {
    hessian: DMatrix<f64>,
    linear: DVector<f64>,
    constant: f64,
    lipschitz: f64,
}

impl Quadratic {
    pub fn new(hessian: DMatrix<f64>, linear: DVector<f64>, constant: f64) -> Result<Self> {
        let n = hessian.nrows();
        if hessian.ncols() != n {
            return Err(Error::NotSquare { rows: n, cols: hessian.ncols() });
        }
        if linear.len() != n {
            return Err(Error::DimensionMismatch { expected: n, got: linear.len() });
        }
        let sym = (&hessian + hessian.transpose()) * 0.5;
        let eig = sym.clone().symmetric_eigen();
        let min = eig.eigenvalues.iter().copied().fold(f64::INFINITY, f64::min);
        let scale = eig.eigenvalues.amax().max(1.0);
        if min < -1e-12 * scale {
            return Err(Error::InvalidParameter(format!(
                "hessian is not positive semidefinite (min eigenvalue {min})"
            )));
        }
        let lipschitz = eig.eigenvalues.iter().copied().fold(0.0, f64::max);
        Ok(Quadratic { hessian: sym, linear, constant, lipschitz })
    }

    pub fn hessian(&self) -> &DMatrix<f64> {
        &self.hessian
    }
}

impl SmoothTerm for Quadratic {
    fn value(&self, x: &Point) -> f64 {
        let v = DVector::from_column_slice(x.values());
        0.5 * v.dot(&(&self.hessian * &v)) + self.linear.dot(&v) + self.constant
    }

    fn gradient(&self, x: &Point) -> Point {
        let v = DVector::from_column_slice(x.values());
        let g = &self.hessian * &v + &self.linear;
        x.with_values(g.as_slice().to_vec())
    }

    fn lipschitz(&self) -> f64 {
        self.lipschitz
    }

    fn dimension(&self) -> Option<usize> {
        Some(self.linear.len())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_term_is_identity_prox() {
        let x = Point::new(vec![1.0, -2.0]).unwrap();
        assert_eq!(Zero.prox(&x, 3.0).unwrap(), x);
        assert_eq!(Zero.value(&x), 0.0);
    }

    #[test]
    fn squared_distance_rejects_nonpositive_weight() {
        assert!(SquaredDistance::new(Point::zeros(2), 0.0).is_err());
        assert!(SquaredDistance::new(Point::zeros(2), -1.0).is_err());
    }

    #[test]
    fn quadratic_lipschitz_is_top_eigenvalue() {
        let h = DMatrix::from_row_slice(2, 2, &[2.0, 1.0, 1.0, 2.0]);
        let q = Quadratic::new(h, DVector::zeros(2), 0.0).unwrap();
        assert!((q.lipschitz() - 3.0).abs() < 1e-12);
    }

    #[test]
    fn quadratic_rejects_indefinite() {
        let h = DMatrix::from_row_slice(2, 2, &[1.0, 0.0, 0.0, -1.0]);
        assert!(Quadratic::new(h, DVector::zeros(2), 0.0).is_err());
    }
}
