use super::state::{IterateState, StepRecord};
use crate::error::{Error, Result};

/// `max{0, <x_n - y_n, w_{n-1} - x_{n-1}> + <y_{n-1} - x_n, w_n - x_n>}`
pub fn compute_en(state: &IterateState, prev_state: &IterateState) -> Result<f64> {
    match (&state.last, &prev_state.last) {
        (Some(curr), Some(prev)) => Ok(en_from_steps(curr, prev)),
        _ => Err(Error::InvalidParameter("e_n needs two completed steps".into())),
    }
}

pub(crate) fn en_from_steps(curr: &StepRecord, prev: &StepRecord) -> f64 {
    let (x, y, w) = (curr.x.values(), curr.y.values(), curr.w.values());
    let (xp, yp, wp) = (prev.x.values(), prev.y.values(), prev.w.values());
    let mut first = 0.0;
    let mut second = 0.0;
    for i in 0..x.len() {
        first += (x[i] - y[i]) * (wp[i] - xp[i]);
        second += (yp[i] - x[i]) * (w[i] - x[i]);
    }
    (first + second).max(0.0)
}

/// `||y_n - x_n||` of the last completed step.
pub fn fixed_point_residual(state: &IterateState) -> Option<f64> {
    state.last.as_ref().map(|s| s.y.distance(&s.x))
}
