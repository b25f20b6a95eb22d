//! Proximal operators and projections used by the problem gallery.
//!
//! Every operator is available both as a free function and as a
//! [`ProxTerm`](crate::model::ProxTerm) implementation.

mod nuclear;
mod psd;
mod sets;
mod simplex;
mod subspace;

pub use nuclear::{nuclear_norm, prox_nuclear, NuclearNorm};
pub use psd::{min_eigenvalue, project_psd, PsdCone};
pub use sets::{project_box, project_halfspace, project_nonneg, BoxSet, Halfspace, NonnegOrthant};
pub use simplex::{project_simplex, Simplex};
pub use subspace::{
    project_block_subspace, prox_subspace_plus_quadratic, BlockSubspace, RotatedBlockSubspace, SubspacePlusQuadratic,
};

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::model::Point;

/// Row-major point to matrix, using the point's shape or `fallback`.
pub(crate) fn to_matrix(x: &Point, fallback: Option<(usize, usize)>) -> Result<DMatrix<f64>> {
    let (r, c) = match x.shape().or(fallback) {
        Some(s) => s,
        None => return Err(Error::MissingShape),
    };
    if r * c != x.len() {
        return Err(Error::ShapeMismatch { rows: r, cols: c, len: x.len() });
    }
    Ok(DMatrix::from_row_slice(r, c, x.values()))
}

/// Matrix back to a row-major point with the matrix's shape.
pub(crate) fn from_matrix(m: &DMatrix<f64>) -> Point {
    let (r, c) = m.shape();
    let mut values = Vec::with_capacity(r * c);
    for i in 0..r {
        for j in 0..c {
            values.push(m[(i, j)]);
        }
    }
    Point::from_raw(values, Some((r, c)))
}
