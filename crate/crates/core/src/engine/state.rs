use crate::model::Point;

/// Intermediates of one completed step `n`.
#[derive(Debug, Clone, PartialEq)]
pub struct StepRecord {
    pub w: Point,
    pub x: Point,
    pub y: Point,
    pub tau: f64,
    pub lambda: f64,
}

/// Solver state between steps.
///
/// `n` is the index of the step that runs next, so a fresh state has
/// `n = 1` and `x_bar_prev == x_bar`. After step `n` completes, `x_bar`
/// holds `xbar_{n+1}`, `x_bar_prev` holds `xbar_n` and `last` holds
/// `(w_n, x_n, y_n)`.
#[derive(Debug, Clone, PartialEq)]
pub struct IterateState {
    pub x_bar_prev: Point,
    pub x_bar: Point,
    pub last: Option<StepRecord>,
    pub n: usize,
    pub restart_anchor: usize,
    /// `theta_{n-1}` for the theta schedule; `1` before the first step.
    pub theta_prev: f64,
    pub(crate) divergence_bound: f64,
}

/// Intermediate norms above `DIVERGENCE_FACTOR * (1 + ||x0||)` abort the run.
pub const DIVERGENCE_FACTOR: f64 = 1e12;

impl IterateState {
    pub fn new(x0: Point) -> Self {
        let divergence_bound = DIVERGENCE_FACTOR * (1.0 + x0.norm());
        IterateState {
            x_bar_prev: x0.clone(),
            x_bar: x0,
            last: None,
            n: 1,
            restart_anchor: 1,
            theta_prev: 1.0,
            divergence_bound,
        }
    }

    /// Number of completed steps.
    pub fn completed(&self) -> usize {
        self.n - 1
    }

    pub fn last_x(&self) -> Option<&Point> {
        self.last.as_ref().map(|s| &s.x)
    }
}
