use super::state::IterateState;
use crate::model::InertiaSchedule;

/// `theta_n = t / (n + t)`
pub fn theta(t: f64, n: usize) -> f64 {
    t / (n as f64 + t)
}

impl InertiaSchedule {
    /// `tau_n` given the step index, restart anchor and `theta_{n-1}`.
    pub fn tau_at(&self, n: usize, restart_anchor: usize, theta_prev: f64) -> f64 {
        match *self {
            InertiaSchedule::Zero => 0.0,
            InertiaSchedule::Constant(tau) | InertiaSchedule::NegativeConstant(tau) => tau,
            InertiaSchedule::Restart => {
                let k = n.saturating_sub(restart_anchor) as f64;
                k / (k + 3.0)
            }
            InertiaSchedule::NesterovTheta(t) => {
                let current = theta(t, n);
                current * (1.0 - theta_prev) / theta_prev
            }
        }
    }

    /// `theta_n` to carry into the next state (`1` for schedules without one).
    pub(crate) fn theta_after(&self, n: usize) -> f64 {
        match *self {
            InertiaSchedule::NesterovTheta(t) => theta(t, n),
            _ => 1.0,
        }
    }
}

/// Inertia parameter for the step `state.n`.
pub fn next_tau(schedule: &InertiaSchedule, state: &IterateState) -> f64 {
    schedule.tau_at(state.n, state.restart_anchor, state.theta_prev)
}
