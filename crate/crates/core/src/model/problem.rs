use std::sync::Arc;

use super::point::Point;
use super::terms::{ProxTerm, SmoothTerm};
use crate::error::{Error, Result};

/// `minimize f(x) + g(x) + h(x)` with `f`, `g` prox-friendly and `h` smooth.
///
/// `g` is the term applied first in each step, so its prox output `x_n` is
/// the iterate that stays feasible when `g` is an indicator.
#[derive(Debug, Clone)]
pub struct SplitProblem {
    pub f: Arc<dyn ProxTerm>,
    pub g: Arc<dyn ProxTerm>,
    pub h: Arc<dyn SmoothTerm>,
    dim: usize,
}

impl SplitProblem {
    pub fn dimension(&self) -> usize {
        self.dim
    }

    /// `1 / L`, the cocoercivity constant of the gradient of `h`.
    pub fn beta(&self) -> f64 {
        1.0 / self.h.lipschitz()
    }

    pub fn check_point(&self, x: &Point) -> Result<()> {
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: x.len() });
        }
        Ok(())
    }
}

pub fn make_problem(
    f: Arc<dyn ProxTerm>,
    g: Arc<dyn ProxTerm>,
    h: Arc<dyn SmoothTerm>,
    dim: usize,
) -> Result<SplitProblem> {
    if dim == 0 {
        return Err(Error::InvalidParameter("dimension must be at least 1".into()));
    }
    let lipschitz = h.lipschitz();
    if !(lipschitz > 0.0 && lipschitz.is_finite()) {
        return Err(Error::InvalidParameter(format!("Lipschitz constant must be positive, got {lipschitz}")));
    }
    for d in [f.dimension(), g.dimension(), h.dimension()].into_iter().flatten() {
        if d != dim {
            return Err(Error::DimensionMismatch { expected: dim, got: d });
        }
    }
    Ok(SplitProblem { f, g, h, dim })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::terms::{SquaredDistance, Zero};

    #[test]
    fn rejects_zero_dimension_and_mismatch() {
        let h = Arc::new(SquaredDistance::half_norm(3));
        assert!(make_problem(Arc::new(Zero), Arc::new(Zero), h.clone(), 0).is_err());
        assert!(matches!(
            make_problem(Arc::new(Zero), Arc::new(Zero), h.clone(), 4),
            Err(Error::DimensionMismatch { expected: 4, got: 3 })
        ));
        let p = make_problem(Arc::new(Zero), Arc::new(Zero), h, 3).unwrap();
        assert_eq!(p.dimension(), 3);
        assert_eq!(p.beta(), 1.0);
    }
}
