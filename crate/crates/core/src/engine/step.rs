use super::schedule::next_tau;
use super::state::{IterateState, StepRecord};
use crate::error::{Error, Result};
use crate::model::{Point, SolverParams, SplitProblem};

/// One IFDR step with `tau_n` and `lambda_n` taken from `params`.
pub fn ifdr_step(state: &IterateState, problem: &SplitProblem, params: &SolverParams) -> Result<IterateState> {
    let tau = next_tau(&params.inertia, state);
    let lambda = params.lambda.at(state.n);
    step_with(state, problem, params, tau, lambda)
}

/// One IFDR step with explicit `tau` and `lambda`:
///
/// ```text
/// w    = xbar_n + tau (xbar_n - xbar_{n-1})
/// x    = prox_{gamma g}(w)
/// y    = prox_{gamma f}(2x - w - gamma grad h(x))
/// xbar_{n+1} = w + lambda (y - x)
/// ```
pub fn step_with(
    state: &IterateState,
    problem: &SplitProblem,
    params: &SolverParams,
    tau: f64,
    lambda: f64,
) -> Result<IterateState> {
    let gamma = params.gamma;
    let n = state.n;
    let cur = state.x_bar.values();
    let prev = state.x_bar_prev.values();

    let w = state.x_bar.with_values(cur.iter().zip(prev).map(|(a, b)| a + tau * (a - b)).collect());
    guard(&w, "w", n, state.divergence_bound)?;

    let x = problem.g.prox(&w, gamma)?;
    guard(&x, "x", n, state.divergence_bound)?;

    let grad = problem.h.gradient(&x);
    let reflected = w.with_values(
        x.values().iter().zip(w.values()).zip(grad.values()).map(|((xi, wi), gi)| 2.0 * xi - wi - gamma * gi).collect(),
    );
    let y = problem.f.prox(&reflected, gamma)?;
    guard(&y, "y", n, state.divergence_bound)?;

    let next = w.with_values(
        w.values()
            .iter()
            .zip(y.values().iter().zip(x.values()))
            .map(|(wi, (yi, xi))| wi + lambda * (yi - xi))
            .collect(),
    );
    guard(&next, "xbar", n, state.divergence_bound)?;

    Ok(IterateState {
        x_bar_prev: state.x_bar.clone(),
        x_bar: next,
        last: Some(StepRecord { w, x, y, tau, lambda }),
        n: n + 1,
        restart_anchor: state.restart_anchor,
        theta_prev: params.inertia.theta_after(n),
        divergence_bound: state.divergence_bound,
    })
}

fn guard(p: &Point, name: &str, iter: usize, bound: f64) -> Result<()> {
    if !p.is_finite() {
        return Err(Error::Divergence { iter, reason: format!("non-finite entry in {name}") });
    }
    let norm = p.norm();
    if norm > bound {
        return Err(Error::Divergence { iter, reason: format!("||{name}|| = {norm:.3e} exceeds {bound:.3e}") });
    }
    Ok(())
}
