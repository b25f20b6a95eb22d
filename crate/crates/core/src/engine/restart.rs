use serde::{Deserialize, Serialize};

use crate::model::{Point, SplitProblem};

/// Which surrogate decides a restart.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PsiMode {
    /// Neither term is a constraint: compare `f + g + h`.
    Lipschitz,
    /// `g` is a constraint (so `x_n` is feasible for it): compare `f + h`.
    OneIndicator,
    /// Both terms are constraints: feasibility of `f`, then `h`.
    TwoIndicators,
}

impl PsiMode {
    /// Picks the mode matching which terms carry constraints.
    pub fn infer(problem: &SplitProblem) -> Self {
        match (problem.f.is_constraint(), problem.g.is_constraint()) {
            (false, false) => PsiMode::Lipschitz,
            (false, true) => PsiMode::OneIndicator,
            _ => PsiMode::TwoIndicators,
        }
    }
}

/// Surrogate values at one iterate `x_n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PsiObservation {
    pub psi: f64,
    pub f_feasible: bool,
    pub h: f64,
}

impl PsiObservation {
    pub fn observe(problem: &SplitProblem, mode: PsiMode, x: &Point) -> Self {
        let h = problem.h.value(x);
        let psi = match mode {
            PsiMode::Lipschitz => problem.f.value(x) + problem.g.value(x) + h,
            PsiMode::OneIndicator => problem.f.value(x) + h,
            // ignored in this mode; the finite part of g keeps it meaningful
            PsiMode::TwoIndicators => problem.g.finite_part(x) + h,
        };
        PsiObservation { psi, f_feasible: problem.f.is_feasible(x), h: h + problem.g.finite_part(x) }
    }
}

/// `true` when the inertia should restart at the current iterate.
pub fn restart_decide(
    psi_curr: f64,
    psi_prev: f64,
    f_feas_curr: bool,
    f_feas_prev: bool,
    h_curr: f64,
    h_prev: f64,
    mode: PsiMode,
) -> bool {
    match mode {
        PsiMode::Lipschitz | PsiMode::OneIndicator => psi_curr >= psi_prev,
        PsiMode::TwoIndicators => {
            (!f_feas_curr && f_feas_prev)
                || (!f_feas_curr && !f_feas_prev && h_curr >= h_prev)
                || (f_feas_curr && f_feas_prev && h_curr >= h_prev)
        }
    }
}

pub(crate) fn decide(curr: &PsiObservation, prev: &PsiObservation, mode: PsiMode) -> bool {
    restart_decide(curr.psi, prev.psi, curr.f_feasible, prev.f_feasible, curr.h, prev.h, mode)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_indicator_convention() {
        let m = PsiMode::TwoIndicators;
        // became infeasible
        assert!(restart_decide(0.0, 0.0, false, true, 0.0, 1.0, m));
        // both infeasible, h rose / fell
        assert!(restart_decide(0.0, 0.0, false, false, 2.0, 1.0, m));
        assert!(!restart_decide(0.0, 0.0, false, false, 0.5, 1.0, m));
        // both feasible, h rose / fell
        assert!(restart_decide(0.0, 0.0, true, true, 2.0, 1.0, m));
        assert!(!restart_decide(0.0, 0.0, true, true, 0.5, 1.0, m));
        // regained feasibility never restarts
        assert!(!restart_decide(0.0, 0.0, true, false, 5.0, 1.0, m));
    }

    #[test]
    fn lipschitz_needs_non_decrease() {
        assert!(!restart_decide(0.9, 1.0, true, true, 0.0, 0.0, PsiMode::Lipschitz));
        assert!(restart_decide(1.0, 1.0, true, true, 0.0, 0.0, PsiMode::Lipschitz));
        assert!(restart_decide(1.1, 1.0, false, false, 0.0, 0.0, PsiMode::OneIndicator));
    }
}
