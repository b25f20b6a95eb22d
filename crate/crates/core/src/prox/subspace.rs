use std::f64::consts::FRAC_PI_2;

use crate::error::{Error, Result};
use crate::model::{Point, ProxTerm};

/// Direct sum of `N` lines in `R^2`, block `k` spanned by `(cos a_k, sin a_k)`.
#[derive(Debug, Clone, PartialEq)]
pub struct RotatedBlockSubspace {
    angles: Vec<f64>,
    // cached unit directions
    directions: Vec<(f64, f64)>,
}

impl RotatedBlockSubspace {
    pub fn new(angles: Vec<f64>) -> Result<Self> {
        if angles.is_empty() {
            return Err(Error::InvalidParameter("need at least one block".into()));
        }
        if let Some(bad) = angles.iter().find(|a| !(0.0..=FRAC_PI_2).contains(*a)) {
            return Err(Error::InvalidParameter(format!("block angle {bad} outside [0, pi/2]")));
        }
        let directions = angles.iter().map(|&a| if a == 0.0 { (1.0, 0.0) } else { (a.cos(), a.sin()) }).collect();
        Ok(RotatedBlockSubspace { angles, directions })
    }

    /// All blocks aligned with the first axis.
    pub fn axis_aligned(num_blocks: usize) -> Result<Self> {
        Self::new(vec![0.0; num_blocks])
    }

    pub fn num_blocks(&self) -> usize {
        self.angles.len()
    }

    pub fn dimension(&self) -> usize {
        2 * self.angles.len()
    }

    pub fn angles(&self) -> &[f64] {
        &self.angles
    }

    pub fn direction(&self, block: usize) -> (f64, f64) {
        self.directions[block]
    }

    fn check(&self, x: &Point) -> Result<()> {
        if x.len() != self.dimension() {
            return Err(Error::DimensionMismatch { expected: self.dimension(), got: x.len() });
        }
        Ok(())
    }

    fn project_scaled(&self, x: &Point, scale: f64) -> Vec<f64> {
        let v = x.values();
        let mut out = vec![0.0; v.len()];
        for (k, &(c, s)) in self.directions.iter().enumerate() {
            let coef = scale * (v[2 * k] * c + v[2 * k + 1] * s);
            out[2 * k] = coef * c;
            out[2 * k + 1] = coef * s;
        }
        out
    }
}

/// Blockwise orthogonal projection onto the subspace.
pub fn project_block_subspace(x: &Point, subspace: &RotatedBlockSubspace) -> Result<Point> {
    subspace.check(x)?;
    Ok(x.with_values(subspace.project_scaled(x, 1.0)))
}

/// `prox` of `iota_V + (rho/2)||.||^2` with step `gamma`: `P_V(x) / (1 + gamma rho)`.
pub fn prox_subspace_plus_quadratic(x: &Point, subspace: &RotatedBlockSubspace, rho: f64, gamma: f64) -> Result<Point> {
    if !(rho >= 0.0 && gamma > 0.0) {
        return Err(Error::InvalidParameter(format!("need rho >= 0 and gamma > 0, got {rho}, {gamma}")));
    }
    subspace.check(x)?;
    Ok(x.with_values(subspace.project_scaled(x, 1.0 / (1.0 + gamma * rho))))
}

fn subspace_distance(subspace: &RotatedBlockSubspace, x: &Point) -> f64 {
    if x.len() != subspace.dimension() {
        return f64::INFINITY;
    }
    let p = subspace.project_scaled(x, 1.0);
    x.values().iter().zip(&p).map(|(a, b)| (a - b) * (a - b)).sum::<f64>().sqrt()
}

/// Indicator of a [`RotatedBlockSubspace`].
#[derive(Debug, Clone)]
pub struct BlockSubspace(pub RotatedBlockSubspace);

impl ProxTerm for BlockSubspace {
    fn prox(&self, x: &Point, _gamma: f64) -> Result<Point> {
        project_block_subspace(x, &self.0)
    }

    fn feasibility_distance(&self, x: &Point) -> f64 {
        subspace_distance(&self.0, x)
    }

    fn is_constraint(&self) -> bool {
        true
    }

    fn dimension(&self) -> Option<usize> {
        Some(self.0.dimension())
    }
}

/// `iota_V + (rho/2)||.||^2`
#[derive(Debug, Clone)]
pub struct SubspacePlusQuadratic {
    subspace: RotatedBlockSubspace,
    rho: f64,
}

impl SubspacePlusQuadratic {
    pub fn new(subspace: RotatedBlockSubspace, rho: f64) -> Result<Self> {
        if !(rho >= 0.0 && rho.is_finite()) {
            return Err(Error::InvalidParameter(format!("rho must be nonnegative, got {rho}")));
        }
        Ok(SubspacePlusQuadratic { subspace, rho })
    }

    pub fn subspace(&self) -> &RotatedBlockSubspace {
        &self.subspace
    }

    pub fn rho(&self) -> f64 {
        self.rho
    }
}

impl ProxTerm for SubspacePlusQuadratic {
    fn prox(&self, x: &Point, gamma: f64) -> Result<Point> {
        prox_subspace_plus_quadratic(x, &self.subspace, self.rho, gamma)
    }

    fn finite_part(&self, x: &Point) -> f64 {
        0.5 * self.rho * x.norm_squared()
    }

    fn feasibility_distance(&self, x: &Point) -> f64 {
        subspace_distance(&self.subspace, x)
    }

    fn is_constraint(&self) -> bool {
        true
    }

    fn dimension(&self) -> Option<usize> {
        Some(self.subspace.dimension())
    }
}
