//! Inertial forward-Douglas-Rachford (IFDR) splitting for
//! `minimize f(x) + g(x) + h(x)` where `f`, `g` have cheap proximal
//! operators and `h` has a Lipschitz gradient.
//!
//! - [`model`]: points, terms, problems, parameters and traces
//! - [`prox`]: projections and proximal operators
//! - [`engine`]: the iteration, inertia schedules, adaptive restart,
//!   parameter certificates and the block variant
//! - [`gallery`]: builders for portfolio, matrix completion, doubly
//!   nonnegative projection and the slow-convergence example
//! - [`cli`]: the `ifdr` command line front end

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod engine;
pub mod error;
pub mod gallery;
pub mod model;
pub mod prox;

pub use error::{Error, Result};
pub use nalgebra;
