//! Block-structured problems `phi(x_1..x_m) + sum_i f_i(x_i) + g_i(x_i)`.

use std::fmt;
use std::sync::Arc;

use super::diagnostics::en_from_steps;
use super::state::{StepRecord, DIVERGENCE_FACTOR};
use crate::error::{Error, Result};
use crate::model::point::concat;
use crate::model::{make_problem, Point, ProxTerm, SmoothTerm, SolverParams, SplitProblem, TraceRecord};

/// Smooth coupling `phi` over all blocks.
pub trait BlockCoupling: Send + Sync + fmt::Debug {
    fn value(&self, blocks: &[Point]) -> f64;
    /// One partial gradient per block.
    fn gradient(&self, blocks: &[Point]) -> Vec<Point>;
    fn lipschitz(&self) -> f64;
}

#[derive(Debug, Clone)]
pub struct Block {
    pub f: Arc<dyn ProxTerm>,
    pub g: Arc<dyn ProxTerm>,
    pub dim: usize,
}

#[derive(Debug, Clone)]
pub struct BlockProblem {
    pub blocks: Vec<Block>,
    pub coupling: Arc<dyn BlockCoupling>,
}

impl BlockProblem {
    pub fn new(blocks: Vec<Block>, coupling: Arc<dyn BlockCoupling>) -> Result<Self> {
        if blocks.is_empty() {
            return Err(Error::InvalidParameter("need at least one block".into()));
        }
        if let Some(b) = blocks.iter().find(|b| b.dim == 0) {
            return Err(Error::DimensionMismatch { expected: 1, got: b.dim });
        }
        let l = coupling.lipschitz();
        if !(l > 0.0 && l.is_finite()) {
            return Err(Error::InvalidParameter(format!("Lipschitz constant must be positive, got {l}")));
        }
        Ok(BlockProblem { blocks, coupling })
    }

    pub fn total_dimension(&self) -> usize {
        self.blocks.iter().map(|b| b.dim).sum()
    }

    fn offsets(&self) -> Vec<usize> {
        let mut acc = 0;
        self.blocks
            .iter()
            .map(|b| {
                let o = acc;
                acc += b.dim;
                o
            })
            .collect()
    }

    /// The same problem over the concatenation of the blocks.
    pub fn to_split_problem(&self) -> Result<SplitProblem> {
        let layout = Arc::new(Layout { dims: self.blocks.iter().map(|b| b.dim).collect(), offsets: self.offsets() });
        let f = Separable { layout: layout.clone(), terms: self.blocks.iter().map(|b| b.f.clone()).collect() };
        let g = Separable { layout: layout.clone(), terms: self.blocks.iter().map(|b| b.g.clone()).collect() };
        let h = Coupled { layout, coupling: self.coupling.clone() };
        make_problem(Arc::new(f), Arc::new(g), Arc::new(h), self.total_dimension())
    }
}

#[derive(Debug)]
struct Layout {
    dims: Vec<usize>,
    offsets: Vec<usize>,
}

impl Layout {
    fn split(&self, x: &Point) -> Vec<Point> {
        self.dims
            .iter()
            .zip(&self.offsets)
            .map(|(&d, &o)| Point::from_raw(x.values()[o..o + d].to_vec(), None))
            .collect()
    }
}

#[derive(Debug)]
struct Separable {
    layout: Arc<Layout>,
    terms: Vec<Arc<dyn ProxTerm>>,
}

impl ProxTerm for Separable {
    fn prox(&self, x: &Point, gamma: f64) -> Result<Point> {
        let parts = self.layout.split(x);
        let out: Result<Vec<Point>> = parts.iter().zip(&self.terms).map(|(p, t)| t.prox(p, gamma)).collect();
        Ok(x.with_values(concat(&out?).into_values()))
    }

    fn finite_part(&self, x: &Point) -> f64 {
        self.layout.split(x).iter().zip(&self.terms).map(|(p, t)| t.finite_part(p)).sum()
    }

    fn feasibility_distance(&self, x: &Point) -> f64 {
        let parts = self.layout.split(x);
        parts.iter().zip(&self.terms).map(|(p, t)| t.feasibility_distance(p).powi(2)).sum::<f64>().sqrt()
    }

    fn is_constraint(&self) -> bool {
        self.terms.iter().any(|t| t.is_constraint())
    }

    fn dimension(&self) -> Option<usize> {
        Some(self.layout.dims.iter().sum())
    }
}

#[derive(Debug)]
struct Coupled {
    layout: Arc<Layout>,
    coupling: Arc<dyn BlockCoupling>,
}

impl SmoothTerm for Coupled {
    fn value(&self, x: &Point) -> f64 {
        self.coupling.value(&self.layout.split(x))
    }

    fn gradient(&self, x: &Point) -> Point {
        let g = self.coupling.gradient(&self.layout.split(x));
        x.with_values(concat(&g).into_values())
    }

    fn lipschitz(&self) -> f64 {
        self.coupling.lipschitz()
    }

    fn dimension(&self) -> Option<usize> {
        Some(self.layout.dims.iter().sum())
    }
}

#[derive(Debug, Clone)]
pub struct MultiRunOutput {
    /// Last `x_{i,n}` per block.
    pub solution: Vec<Point>,
    pub x_bar: Vec<Point>,
    pub trace: Vec<TraceRecord>,
}

/// Blockwise iteration: all `w_i`, `x_i` first, then every `y_i` against the
/// partial gradients of `phi` at the full `x_n`, then the joint update.
pub fn run_multivariate(bp: &BlockProblem, params: &SolverParams, x0_blocks: Vec<Point>) -> Result<MultiRunOutput> {
    params.validate()?;
    if x0_blocks.len() != bp.blocks.len() {
        return Err(Error::DimensionMismatch { expected: bp.blocks.len(), got: x0_blocks.len() });
    }
    for (b, x) in bp.blocks.iter().zip(&x0_blocks) {
        if b.dim != x.len() {
            return Err(Error::DimensionMismatch { expected: b.dim, got: x.len() });
        }
    }
    let gamma = params.gamma;
    let bound = DIVERGENCE_FACTOR * (1.0 + concat(&x0_blocks).norm());
    let mut x_bar = x0_blocks.clone();
    let mut x_bar_prev = x0_blocks;
    let mut theta_prev = 1.0;
    let mut prev_step: Option<StepRecord> = None;
    let mut trace = Vec::with_capacity(params.max_iters.min(1 << 16));
    let mut solution = x_bar.clone();

    for n in 1..=params.max_iters {
        let tau = params.inertia.tau_at(n, 1, theta_prev);
        let lambda = params.lambda.at(n);

        let mut ws = Vec::with_capacity(bp.blocks.len());
        let mut xs = Vec::with_capacity(bp.blocks.len());
        for (i, block) in bp.blocks.iter().enumerate() {
            let cur = x_bar[i].values();
            let prev = x_bar_prev[i].values();
            let w = x_bar[i].with_values(cur.iter().zip(prev).map(|(a, b)| a + tau * (a - b)).collect());
            let x = block.g.prox(&w, gamma)?;
            ws.push(w);
            xs.push(x);
        }
        let grads = bp.coupling.gradient(&xs);
        let mut ys = Vec::with_capacity(bp.blocks.len());
        for (i, block) in bp.blocks.iter().enumerate() {
            let reflected = ws[i].with_values(
                xs[i]
                    .values()
                    .iter()
                    .zip(ws[i].values())
                    .zip(grads[i].values())
                    .map(|((xi, wi), gi)| 2.0 * xi - wi - gamma * gi)
                    .collect(),
            );
            ys.push(block.f.prox(&reflected, gamma)?);
        }
        let next: Vec<Point> = (0..bp.blocks.len())
            .map(|i| {
                ws[i].with_values(
                    ws[i]
                        .values()
                        .iter()
                        .zip(ys[i].values().iter().zip(xs[i].values()))
                        .map(|(wi, (yi, xi))| wi + lambda * (yi - xi))
                        .collect(),
                )
            })
            .collect();

        let flat_next = concat(&next);
        if !flat_next.is_finite() || flat_next.norm() > bound {
            return Err(Error::Divergence { iter: n, reason: "block iterate left the divergence bound".into() });
        }

        let step = StepRecord { w: concat(&ws), x: concat(&xs), y: concat(&ys), tau, lambda };
        let objective = bp.coupling.value(&xs)
            + bp.blocks.iter().zip(&xs).map(|(b, x)| b.f.finite_part(x) + b.g.finite_part(x)).sum::<f64>();
        let feas = |pick: fn(&Block) -> &Arc<dyn ProxTerm>| {
            bp.blocks.iter().zip(&xs).map(|(b, x)| pick(b).feasibility_distance(x).powi(2)).sum::<f64>().sqrt()
        };
        trace.push(TraceRecord {
            iter: n,
            objective,
            step_norm: flat_next.distance(&concat(&x_bar)),
            fixed_point_residual: step.y.distance(&step.x),
            feasibility_f: feas(|b| &b.f),
            feasibility_g: feas(|b| &b.g),
            e_n: prev_step.as_ref().map(|prev| en_from_steps(&step, prev)),
            restarted: false,
        });

        theta_prev = params.inertia.theta_after(n);
        solution = xs;
        prev_step = Some(step);
        x_bar_prev = std::mem::replace(&mut x_bar, next);
    }

    Ok(MultiRunOutput { solution, x_bar, trace })
}
