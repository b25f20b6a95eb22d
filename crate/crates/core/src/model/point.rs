use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// A point of the finite-dimensional Hilbert space the solver works in.
///
/// Matrix-valued points are stored flattened in row-major order together
/// with their `(rows, cols)` shape.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Point {
    values: Vec<f64>,
    shape: Option<(usize, usize)>,
}

impl Point {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        check_finite(&values)?;
        Ok(Point { values, shape: None })
    }

    pub fn matrix(rows: usize, cols: usize, values: Vec<f64>) -> Result<Self> {
        if rows * cols != values.len() {
            return Err(Error::ShapeMismatch { rows, cols, len: values.len() });
        }
        check_finite(&values)?;
        Ok(Point { values, shape: Some((rows, cols)) })
    }

    pub fn zeros(dim: usize) -> Self {
        Point { values: vec![0.0; dim], shape: None }
    }

    pub fn zeros_matrix(rows: usize, cols: usize) -> Self {
        Point { values: vec![0.0; rows * cols], shape: Some((rows, cols)) }
    }

    /// Builds a point from values known to be finite (internal arithmetic).
    pub(crate) fn from_raw(values: Vec<f64>, shape: Option<(usize, usize)>) -> Self {
        debug_assert!(shape.is_none_or(|(r, c)| r * c == values.len()));
        Point { values, shape }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn shape(&self) -> Option<(usize, usize)> {
        self.shape
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.values.iter().all(|v| v.is_finite())
    }

    /// Same shape metadata, new values.
    pub fn with_values(&self, values: Vec<f64>) -> Self {
        debug_assert_eq!(values.len(), self.values.len());
        Point { values, shape: self.shape }
    }

    pub fn map(&self, f: impl Fn(f64) -> f64) -> Self {
        self.with_values(self.values.iter().map(|&v| f(v)).collect())
    }

    pub fn dot(&self, other: &Point) -> f64 {
        dot(&self.values, &other.values)
    }

    pub fn norm(&self) -> f64 {
        norm(&self.values)
    }

    pub fn norm_squared(&self) -> f64 {
        dot(&self.values, &self.values)
    }

    pub fn distance(&self, other: &Point) -> f64 {
        self.values.iter().zip(&other.values).map(|(a, b)| (a - b) * (a - b)).sum::<f64>().sqrt()
    }

    /// `self + alpha * other`
    pub fn add_scaled(&self, alpha: f64, other: &Point) -> Point {
        self.with_values(self.values.iter().zip(&other.values).map(|(a, b)| a + alpha * b).collect())
    }

    pub fn sub(&self, other: &Point) -> Point {
        self.with_values(self.values.iter().zip(&other.values).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, alpha: f64) -> Point {
        self.map(|v| alpha * v)
    }

    /// Returns the `(rows, cols)` shape or `MissingShape`.
    pub fn require_shape(&self) -> Result<(usize, usize)> {
        self.shape.ok_or(Error::MissingShape)
    }

    pub fn require_square(&self) -> Result<usize> {
        let (r, c) = self.require_shape()?;
        if r != c {
            return Err(Error::NotSquare { rows: r, cols: c });
        }
        Ok(r)
    }
}

fn check_finite(values: &[f64]) -> Result<()> {
    match values.iter().position(|v| !v.is_finite()) {
        Some(index) => Err(Error::NonFinite { index, value: values[index] }),
        None => Ok(()),
    }
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

/// Concatenates blocks into one flat vector point.
pub fn concat(blocks: &[Point]) -> Point {
    let values = blocks.iter().flat_map(|b| b.values().iter().copied()).collect();
    Point::from_raw(values, None)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_nan_and_inf() {
        assert!(matches!(Point::new(vec![1.0, f64::NAN]), Err(Error::NonFinite { index: 1, .. })));
        assert!(Point::new(vec![f64::INFINITY]).is_err());
        assert!(Point::matrix(1, 1, vec![f64::NEG_INFINITY]).is_err());
    }

    #[test]
    fn matrix_shape_must_match_length() {
        assert!(matches!(Point::matrix(2, 3, vec![0.0; 5]), Err(Error::ShapeMismatch { rows: 2, cols: 3, len: 5 })));
        let p = Point::matrix(2, 3, vec![0.0; 6]).unwrap();
        assert_eq!(p.shape(), Some((2, 3)));
        assert!(p.require_square().is_err());
    }

    #[test]
    fn arithmetic_keeps_shape() {
        let a = Point::matrix(1, 2, vec![1.0, 2.0]).unwrap();
        let b = Point::matrix(1, 2, vec![3.0, -1.0]).unwrap();
        let c = a.add_scaled(2.0, &b);
        assert_eq!(c.values(), &[7.0, 0.0]);
        assert_eq!(c.shape(), Some((1, 2)));
        assert_eq!(a.dot(&b), 1.0);
        assert!((a.sub(&b).norm() - (4.0f64 + 9.0).sqrt()).abs() < 1e-15);
    }
}
