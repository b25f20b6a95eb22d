use std::f64::consts::FRAC_PI_2;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::model::{make_problem, Point, SplitProblem, SquaredDistance};
use crate::prox::{BlockSubspace, RotatedBlockSubspace, SubspacePlusQuadratic};

/// Block angles `zeta_k`.
#[derive(Debug, Clone, PartialEq)]
pub enum AngleRule {
    /// `zeta_k = pi / (2 (k + 1))`
    Harmonic,
    Explicit(Vec<f64>),
}

impl AngleRule {
    fn angles(&self, num_blocks: usize) -> Result<Vec<f64>> {
        let angles = match self {
            AngleRule::Harmonic => (0..num_blocks).map(|k| FRAC_PI_2 / (k + 1) as f64).collect(),
            AngleRule::Explicit(v) => {
                if v.len() != num_blocks {
                    return Err(Error::DimensionMismatch { expected: num_blocks, got: v.len() });
                }
                v.clone()
            }
        };
        if let Some(bad) = angles.iter().find(|a| !(**a > 0.0 && **a <= FRAC_PI_2)) {
            return Err(Error::InvalidParameter(format!("angle {bad} outside (0, pi/2]")));
        }
        if angles.windows(2).any(|w| w[1] >= w[0]) {
            return Err(Error::InvalidParameter("angles must be strictly decreasing".into()));
        }
        Ok(angles)
    }
}

/// Truncation to `N` blocks of the sum of two rotated line subspaces in
/// `R^2 (+) R^2 (+) ...` on which unaccelerated splitting is slow.
#[derive(Debug, Clone)]
pub struct PathologicalInstance {
    pub num_blocks: usize,
    pub angles: Vec<f64>,
    pub rho: f64,
    /// Every block spanned by the first axis.
    pub v: RotatedBlockSubspace,
    /// Block `k` spanned by the direction at angle `zeta_k`.
    pub v1: RotatedBlockSubspace,
}

impl PathologicalInstance {
    pub fn dimension(&self) -> usize {
        2 * self.num_blocks
    }

    /// `(h + f)(y) = (1 + rho)/2 ||y||^2` for `y` in `V1`; the minimum is `0`.
    pub fn smooth_plus_f(&self, y: &Point) -> f64 {
        0.5 * (1.0 + self.rho) * y.norm_squared()
    }

    /// Unit vector on the second axis of the last (smallest-angle) block,
    /// the slowest mode of the unaccelerated iteration.
    pub fn slow_start(&self) -> Point {
        let mut v = vec![0.0; self.dimension()];
        v[self.dimension() - 1] = 1.0;
        Point::from_raw(v, None)
    }
}

/// `g = iota_V`, `f = iota_{V1} + (rho/2)||.||^2`, `h = 1/2 ||.||^2`.
pub fn build_pathological(
    num_blocks: usize,
    rho: f64,
    angle_rule: &AngleRule,
) -> Result<(PathologicalInstance, SplitProblem)> {
    if num_blocks == 0 {
        return Err(Error::InvalidParameter("need at least one block".into()));
    }
    if !(rho > 0.0 && rho.is_finite()) {
        return Err(Error::InvalidParameter(format!("rho must be positive, got {rho}")));
    }
    let angles = angle_rule.angles(num_blocks)?;
    let v = RotatedBlockSubspace::axis_aligned(num_blocks)?;
    let v1 = RotatedBlockSubspace::new(angles.clone())?;
    let dim = 2 * num_blocks;
    let problem = make_problem(
        Arc::new(SubspacePlusQuadratic::new(v1.clone(), rho)?),
        Arc::new(BlockSubspace(v.clone())),
        Arc::new(SquaredDistance::half_norm(dim)),
        dim,
    )?;
    Ok((PathologicalInstance { num_blocks, angles, rho, v, v1 }, problem))
}
