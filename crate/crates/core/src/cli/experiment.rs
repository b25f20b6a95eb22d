use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use serde::Serialize;

use super::config::{Experiment, RunConfig};
use crate::engine::{run_with_callback, run_with_restart_callback, Control, IterateState, PsiMode};
use crate::error::{Error, Result};
use crate::gallery::{
    build_dnn_projection, build_markowitz, build_matrix_completion, build_pathological, dykstra_dnn, load_movielens,
    load_movielens_split, load_returns_csv, random_symmetric, synthetic_low_rank, synthetic_returns, test_objective,
    AngleRule, DnnStopCriteria, Partition, PathologicalInstance, RatingsDataset, ReturnsDataset,
};
use crate::model::{
    make_problem, InertiaSchedule, Point, SolverParams, SplitProblem, SquaredDistance, TraceRecord, Zero,
};

/// Experiment-specific quality measure written next to each trace row.
enum Metric {
    /// `(h + f)(y_n) - 0`.
    Pathological(PathologicalInstance),
    /// `||X_n - Z||_F`, plus the reference criteria.
    Dnn {
        z: Point,
        criteria: DnnStopCriteria,
    },
    /// Held-out tracking error.
    Markowitz(ReturnsDataset),
    /// Held-out RMSE.
    Matcomp(RatingsDataset),
    None,
}

/// A built problem with its start point, shared by all schedules of a comparison.
pub struct Prepared {
    pub problem: SplitProblem,
    pub x0: Point,
    metric: Metric,
}

/// One trace row as written by the CLI.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CliRecord {
    pub iter: usize,
    pub objective: f64,
    pub step_norm: f64,
    pub fixed_point_residual: f64,
    pub feas_f: f64,
    pub feas_g: f64,
    pub e_n: Option<f64>,
    pub restarted: bool,
    pub metric: Option<f64>,
}

impl CliRecord {
    fn new(r: &TraceRecord, metric: Option<f64>) -> Self {
        CliRecord {
            iter: r.iter,
            objective: r.objective,
            step_norm: r.step_norm,
            fixed_point_residual: r.fixed_point_residual,
            feas_f: r.feasibility_f,
            feas_g: r.feasibility_g,
            e_n: r.e_n,
            restarted: r.restarted,
            metric,
        }
    }
}

pub struct Outcome {
    pub records: Vec<CliRecord>,
    pub solution: Point,
    pub restarts: usize,
    pub stopped_early: bool,
    /// First iteration meeting the dnn reference criteria.
    pub criteria_iter: Option<usize>,
    pub gamma: f64,
    pub lipschitz: f64,
}

pub fn prepare(cfg: &RunConfig) -> Result<Prepared> {
    match cfg.experiment {
        Experiment::Markowitz => {
            let data = match &cfg.data {
                Some(path) => load_returns_csv(path, cfg.seed)?,
                None => {
                    let all = synthetic_returns(507, cfg.dim, cfg.seed);
                    let train = all.rows(0, 457).into_owned();
                    let test = all.rows(457, 50).into_owned();
                    ReturnsDataset::new(train, test)?
                }
            };
            let problem = build_markowitz(&data).map_err(as_dataset)?;
            let x0 = Point::zeros(problem.dimension());
            Ok(Prepared { problem, x0, metric: Metric::Markowitz(data) })
        }
        Experiment::Matcomp => {
            let data = match (&cfg.data, &cfg.test_data) {
                (Some(train), Some(test)) => load_movielens_split(train, test)?,
                (Some(path), None) => load_movielens(path, cfg.seed)?,
                _ => synthetic_low_rank(cfg.dim, cfg.dim, 0.6, cfg.seed)?.0,
            };
            let problem = build_matrix_completion(&data, cfg.rho).map_err(|e| match e {
                Error::InvalidParameter(m) if cfg.rho > 0.0 => Error::Dataset(m),
                e => e,
            })?;
            let x0 = Point::zeros_matrix(data.num_users, data.num_movies);
            Ok(Prepared { problem, x0, metric: Metric::Matcomp(data) })
        }
        Experiment::Dnn => {
            let z = random_symmetric(cfg.dim, cfg.seed);
            let problem = build_dnn_projection(&z)?;
            let (reference, _) = dykstra_dnn(&z, 1e-12, 100_000)?;
            let criteria = DnnStopCriteria::from_reference(&z, &reference);
            let x0 = Point::zeros_matrix(cfg.dim, cfg.dim);
            Ok(Prepared { problem, x0, metric: Metric::Dnn { z, criteria } })
        }
        Experiment::Pathological => {
            let (instance, problem) = build_pathological(cfg.blocks, cfg.rho, &AngleRule::Harmonic)?;
            let x0 = instance.slow_start();
            Ok(Prepared { problem, x0, metric: Metric::Pathological(instance) })
        }
        Experiment::Custom => {
            let center = match &cfg.center {
                Some(c) => Point::new(c.clone())?,
                None => {
                    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
                    let normal = Normal::new(0.0, 1.0).expect("unit normal");
                    Point::new((0..cfg.dim).map(|_| normal.sample(&mut rng)).collect())?
                }
            };
            let h = SquaredDistance::new(center, 1.0)?;
            let problem = make_problem(Arc::new(Zero), Arc::new(Zero), Arc::new(h), cfg.dim)?;
            Ok(Prepared { problem, x0: Point::zeros(cfg.dim), metric: Metric::None })
        }
    }
}

fn as_dataset(e: Error) -> Error {
    match e {
        Error::InvalidParameter(m) => Error::Dataset(m),
        e => e,
    }
}

impl Prepared {
    fn metric(&self, state: &IterateState) -> Option<f64> {
        let step = state.last.as_ref()?;
        match &self.metric {
            Metric::Pathological(inst) => Some(inst.smooth_plus_f(&step.y)),
            Metric::Dnn { z, .. } => Some(step.x.distance(z)),
            Metric::Markowitz(data) => test_objective(data, &step.x),
            Metric::Matcomp(data) => data.rmse(&step.x, Partition::Test),
            Metric::None => None,
        }
    }

    fn criteria_met(&self, state: &IterateState) -> bool {
        match (&self.metric, state.last.as_ref()) {
            (Metric::Dnn { z, criteria }, Some(step)) => criteria.satisfied(z, &step.x),
            _ => false,
        }
    }

    pub fn run(&self, cfg: &RunConfig, inertia: InertiaSchedule) -> Result<Outcome> {
        let lipschitz = self.problem.h.lipschitz();
        let gamma = cfg.gamma_rule.resolve(lipschitz);
        let mut params = SolverParams::new(gamma, inertia, cfg.iters).with_lambda(cfg.lambda).with_stop_tol(cfg.tol);
        params.allow_negative_inertia = cfg.allow_negative_inertia;

        let mut records = Vec::new();
        let mut criteria_iter = None;
        let callback = |r: &TraceRecord, s: &IterateState| {
            records.push(CliRecord::new(r, self.metric(s)));
            if criteria_iter.is_none() && self.criteria_met(s) {
                criteria_iter = Some(r.iter);
                if cfg.stop_at_criteria {
                    return Control::Stop;
                }
            }
            Control::Continue
        };
        let out = if inertia == InertiaSchedule::Restart {
            let mode = PsiMode::infer(&self.problem);
            run_with_restart_callback(&self.problem, &params, self.x0.clone(), mode, callback)?
        } else {
            run_with_callback(&self.problem, &params, self.x0.clone(), callback)?
        };
        Ok(Outcome {
            records,
            solution: out.solution,
            restarts: out.restarts,
            stopped_early: out.stopped_early,
            criteria_iter,
            gamma,
            lipschitz,
        })
    }
}
