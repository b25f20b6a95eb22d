use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Rule producing the inertia parameter `tau_n` for each iteration.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum InertiaSchedule {
    /// `tau_n = 0`: plain three-operator splitting.
    Zero,
    /// Fixed `tau` in `[0, 1)`.
    Constant(f64),
    /// `tau_n = (n - t) / (n + 3 - t)` with restart anchor `t`.
    Restart,
    /// `tau_n = theta_n (1 - theta_{n-1}) / theta_{n-1}` with `theta_n = t / (n + t)`, `t >= 2`.
    NesterovTheta(f64),
    /// Fixed `tau` in `(-1, 0)`. Not covered by the parameter certificate.
    NegativeConstant(f64),
}

impl InertiaSchedule {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidParameter(msg));
        match *self {
            InertiaSchedule::Constant(tau) if !(0.0..1.0).contains(&tau) => {
                bad(format!("constant inertia must lie in [0, 1), got {tau}"))
            }
            InertiaSchedule::NesterovTheta(t) if !(t >= 2.0 && t.is_finite()) => {
                bad(format!("theta schedule needs t >= 2, got {t}"))
            }
            InertiaSchedule::NegativeConstant(tau) if !(tau > -1.0 && tau < 0.0) => {
                bad(format!("negative inertia must lie in (-1, 0), got {tau}"))
            }
            _ => Ok(()),
        }
    }
}

impl fmt::Display for InertiaSchedule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InertiaSchedule::Zero => write!(f, "zero"),
            InertiaSchedule::Constant(t) => write!(f, "const:{t}"),
            InertiaSchedule::Restart => write!(f, "restart"),
            InertiaSchedule::NesterovTheta(t) => write!(f, "theta:{t}"),
            InertiaSchedule::NegativeConstant(t) => write!(f, "negconst:{t}"),
        }
    }
}

impl FromStr for InertiaSchedule {
    type Err = Error;

    /// Parses `zero`, `const:TAU`, `restart`, `theta:T` or `negconst:TAU`.
    fn from_str(s: &str) -> Result<Self> {
        let (kind, arg) = match s.split_once(':') {
            Some((k, a)) => (k, Some(a)),
            None => (s, None),
        };
        let num = |a: Option<&str>| -> Result<f64> {
            let a = a.ok_or_else(|| Error::InvalidParameter(format!("'{s}' needs a value")))?;
            a.trim().parse::<f64>().map_err(|_| Error::InvalidParameter(format!("malformed number '{a}' in '{s}'")))
        };
        let schedule = match (kind.trim(), arg) {
            ("zero", None) => InertiaSchedule::Zero,
            ("restart", None) => InertiaSchedule::Restart,
            ("const", a) => InertiaSchedule::Constant(num(a)?),
            ("theta", a) => InertiaSchedule::NesterovTheta(num(a)?),
            ("negconst", a) => InertiaSchedule::NegativeConstant(num(a)?),
            _ => return Err(Error::InvalidParameter(format!("unknown inertia schedule '{s}'"))),
        };
        schedule.validate()?;
        Ok(schedule)
    }
}

/// Relaxation sequence `lambda_n`.
#[derive(Clone)]
pub enum LambdaSchedule {
    Constant(f64),
    /// `values[n-1]` for iteration `n`; the last entry repeats.
    Sequence(Arc<[f64]>),
}

impl LambdaSchedule {
    pub fn at(&self, n: usize) -> f64 {
        match self {
            LambdaSchedule::Constant(l) => *l,
            LambdaSchedule::Sequence(v) => v[(n.max(1) - 1).min(v.len() - 1)],
        }
    }

    fn validate(&self) -> Result<()> {
        let ok = match self {
            LambdaSchedule::Constant(l) => *l > 0.0 && l.is_finite(),
            LambdaSchedule::Sequence(v) => !v.is_empty() && v.iter().all(|l| *l > 0.0 && l.is_finite()),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidParameter("lambda values must be positive and finite".into()))
        }
    }
}

impl fmt::Debug for LambdaSchedule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LambdaSchedule::Constant(l) => write!(f, "Constant({l})"),
            LambdaSchedule::Sequence(v) => write!(f, "Sequence(len={})", v.len()),
        }
    }
}

#[derive(Debug, Clone)]
pub struct SolverParams {
    pub gamma: f64,
    pub lambda: LambdaSchedule,
    pub inertia: InertiaSchedule,
    pub max_iters: usize,
    /// Relative step-norm tolerance; `0` runs the full budget.
    pub stop_tol: f64,
    /// Opt-in for [`InertiaSchedule::NegativeConstant`].
    pub allow_negative_inertia: bool,
}

impl SolverParams {
    /// `lambda = 1`, no early stopping.
    pub fn new(gamma: f64, inertia: InertiaSchedule, max_iters: usize) -> Self {
        SolverParams {
            gamma,
            lambda: LambdaSchedule::Constant(1.0),
            inertia,
            max_iters,
            stop_tol: 0.0,
            allow_negative_inertia: false,
        }
    }

    pub fn with_lambda(mut self, lambda: f64) -> Self {
        self.lambda = LambdaSchedule::Constant(lambda);
        self
    }

    pub fn with_stop_tol(mut self, tol: f64) -> Self {
        self.stop_tol = tol;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.gamma > 0.0 && self.gamma.is_finite()) {
            return Err(Error::InvalidParameter(format!("gamma must be positive, got {}", self.gamma)));
        }
        if self.max_iters == 0 {
            return Err(Error::InvalidParameter("max_iters must be at least 1".into()));
        }
        if !(self.stop_tol >= 0.0) {
            return Err(Error::InvalidParameter("stop_tol must be nonnegative".into()));
        }
        self.lambda.validate()?;
        self.inertia.validate()?;
        if matches!(self.inertia, InertiaSchedule::NegativeConstant(_)) && !self.allow_negative_inertia {
            return Err(Error::InvalidParameter(
                "negative inertia is unvalidated; set allow_negative_inertia to use it".into(),
            ));
        }
        Ok(())
    }
}
