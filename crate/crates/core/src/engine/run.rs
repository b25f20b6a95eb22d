use super::diagnostics::en_from_steps;
use super::restart::{decide, PsiMode, PsiObservation};
use super::schedule::next_tau;
use super::state::IterateState;
use super::step::{ifdr_step, step_with};
use crate::error::{Error, Result};
use crate::model::{InertiaSchedule, Point, SolverParams, SplitProblem, TraceRecord};

/// Returned by per-iteration callbacks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Control {
    Continue,
    Stop,
}

#[derive(Debug, Clone)]
pub struct RunOutput {
    /// Last `x_n`.
    pub solution: Point,
    pub trace: Vec<TraceRecord>,
    pub restarts: usize,
    /// `true` when the step-norm rule or a callback ended the run early.
    pub stopped_early: bool,
    pub final_state: IterateState,
}

impl RunOutput {
    pub fn iterations(&self) -> usize {
        self.trace.len()
    }
}

/// Runs the plain iteration (no restart triggers) from `x0`.
pub fn run(problem: &SplitProblem, params: &SolverParams, x0: Point) -> Result<RunOutput> {
    drive(problem, params, x0, None, |_, _| Control::Continue)
}

/// [`run`] with a hook called once per iteration.
pub fn run_with_callback<F>(problem: &SplitProblem, params: &SolverParams, x0: Point, callback: F) -> Result<RunOutput>
where
    F: FnMut(&TraceRecord, &IterateState) -> Control,
{
    drive(problem, params, x0, None, callback)
}

/// Adaptive restart: whenever the surrogate fails to decrease at step `n`,
/// the anchor moves to `n` and step `n` is recomputed with `tau_n = 0`
/// from the saved pre-step state.
pub fn run_with_restart(problem: &SplitProblem, params: &SolverParams, x0: Point, mode: PsiMode) -> Result<RunOutput> {
    run_with_restart_callback(problem, params, x0, mode, |_, _| Control::Continue)
}

pub fn run_with_restart_callback<F>(
    problem: &SplitProblem,
    params: &SolverParams,
    x0: Point,
    mode: PsiMode,
    callback: F,
) -> Result<RunOutput>
where
    F: FnMut(&TraceRecord, &IterateState) -> Control,
{
    if params.inertia != InertiaSchedule::Restart {
        return Err(Error::InvalidParameter("adaptive restart needs the restart schedule".into()));
    }
    drive(problem, params, x0, Some(mode), callback)
}

fn drive<F>(
    problem: &SplitProblem,
    params: &SolverParams,
    x0: Point,
    restart: Option<PsiMode>,
    mut callback: F,
) -> Result<RunOutput>
where
    F: FnMut(&TraceRecord, &IterateState) -> Control,
{
    params.validate()?;
    problem.check_point(&x0)?;

    let mut state = IterateState::new(x0);
    let mut trace = Vec::with_capacity(params.max_iters.min(1 << 16));
    let mut prev_obs: Option<PsiObservation> = None;
    let mut restarts = 0;
    let mut stopped_early = false;

    while state.n <= params.max_iters {
        let n = state.n;
        let mut next = ifdr_step(&state, problem, params)?;
        let mut restarted = false;

        if let Some(mode) = restart {
            let x = next.last_x().expect("step recorded");
            let mut obs = PsiObservation::observe(problem, mode, x);
            if let Some(prev) = prev_obs {
                if next_tau(&params.inertia, &state) != 0.0 && decide(&obs, &prev, mode) {
                    let mut snapshot = state.clone();
                    snapshot.restart_anchor = n;
                    next = step_with(&snapshot, problem, params, 0.0, params.lambda.at(n))?;
                    obs = PsiObservation::observe(problem, mode, next.last_x().expect("step recorded"));
                    restarted = true;
                    restarts += 1;
                }
            }
            prev_obs = Some(obs);
        }

        let record = trace_record(problem, &state, &next, n, restarted);
        let step_norm = record.step_norm;
        let control = callback(&record, &next);
        trace.push(record);
        let scale = state.x_bar.norm().max(1.0);
        state = next;

        if control == Control::Stop || (params.stop_tol > 0.0 && step_norm <= params.stop_tol * scale) {
            stopped_early = state.n <= params.max_iters;
            break;
        }
    }

    let solution = state.last_x().cloned().unwrap_or_else(|| state.x_bar.clone());
    Ok(RunOutput { solution, trace, restarts, stopped_early, final_state: state })
}

fn trace_record(
    problem: &SplitProblem,
    before: &IterateState,
    after: &IterateState,
    n: usize,
    restarted: bool,
) -> TraceRecord {
    let step = after.last.as_ref().expect("step recorded");
    let x = &step.x;
    let objective = problem.f.finite_part(x) + problem.g.finite_part(x) + problem.h.value(x);
    let e_n = before.last.as_ref().map(|prev| en_from_steps(step, prev));
    TraceRecord {
        iter: n,
        objective,
        step_norm: after.x_bar.distance(&before.x_bar),
        fixed_point_residual: step.y.distance(&step.x),
        feasibility_f: problem.f.feasibility_distance(x),
        feasibility_g: problem.g.feasibility_distance(x),
        e_n,
        restarted,
    }
}
