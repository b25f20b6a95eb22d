use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::InertiaSchedule;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Experiment {
    Markowitz,
    Matcomp,
    Dnn,
    Pathological,
    Custom,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GammaRule {
    Absolute(f64),
    /// `gamma = c / L`
    Relative(f64),
}

impl GammaRule {
    pub fn resolve(self, lipschitz: f64) -> f64 {
        match self {
            GammaRule::Absolute(g) => g,
            GammaRule::Relative(c) => c / lipschitz,
        }
    }

    pub fn relative(self, lipschitz: f64) -> f64 {
        match self {
            GammaRule::Absolute(g) => g * lipschitz,
            GammaRule::Relative(c) => c,
        }
    }
}

/// Flags shared by `run` and `compare`. Every field is optional so that a
/// JSON config file can fill the gaps; flags win over the file.
#[derive(Debug, Clone, Default, Args, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RunArgs {
    /// JSON file with the same keys as the long flags (dashes as underscores).
    #[arg(long)]
    #[serde(skip)]
    pub config: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub experiment: Option<Experiment>,
    /// Absolute step size.
    #[arg(long, conflicts_with = "gamma_rel")]
    pub gamma: Option<f64>,
    /// Step size as a multiple of 1/L.
    #[arg(long)]
    pub gamma_rel: Option<f64>,
    #[arg(long)]
    pub lambda: Option<f64>,
    /// zero | const:TAU | restart | theta:T | negconst:TAU
    #[arg(long)]
    pub inertia: Option<String>,
    /// Required for negconst inertia.
    #[arg(long)]
    pub allow_negative_inertia: Option<bool>,
    #[arg(long)]
    pub iters: Option<usize>,
    /// Relative step-norm stopping tolerance; 0 runs the full budget.
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Returns CSV (markowitz) or tab-separated ratings (matcomp).
    #[arg(long)]
    pub data: Option<PathBuf>,
    /// Predefined test ratings paired with --data (matcomp).
    #[arg(long)]
    pub test_data: Option<PathBuf>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Matrix order (dnn, matcomp), asset count (markowitz) or dimension (custom).
    #[arg(long)]
    pub dim: Option<usize>,
    /// Block count (pathological).
    #[arg(long)]
    pub blocks: Option<usize>,
    /// Nuclear-norm weight (matcomp) or quadratic weight (pathological).
    #[arg(long)]
    pub rho: Option<f64>,
    /// Stop a dnn run once both reference criteria hold.
    #[arg(long)]
    pub stop_at_criteria: Option<bool>,
    /// Center of `h = 1/2 ||x - c||^2` for the custom experiment.
    #[arg(skip)]
    pub center: Option<Vec<f64>>,
}

impl RunArgs {
    /// Flags merged over the config file named by `--config`, if any.
    pub fn merged(&self) -> Result<RunArgs> {
        let Some(path) = &self.config else {
            return Ok(self.clone());
        };
        let base = read_config(path)?;
        let pick = |a: &Option<f64>, b: Option<f64>| a.or(b);
        let gamma_given = self.gamma.is_some() || self.gamma_rel.is_some();
        Ok(RunArgs {
            config: None,
            experiment: self.experiment.or(base.experiment),
            gamma: if gamma_given { self.gamma } else { base.gamma },
            gamma_rel: if gamma_given { self.gamma_rel } else { base.gamma_rel },
            lambda: pick(&self.lambda, base.lambda),
            inertia: self.inertia.clone().or(base.inertia),
            allow_negative_inertia: self.allow_negative_inertia.or(base.allow_negative_inertia),
            iters: self.iters.or(base.iters),
            tol: pick(&self.tol, base.tol),
            seed: self.seed.or(base.seed),
            data: self.data.clone().or(base.data),
            test_data: self.test_data.clone().or(base.test_data),
            out: self.out.clone().or(base.out),
            dim: self.dim.or(base.dim),
            blocks: self.blocks.or(base.blocks),
            rho: pick(&self.rho, base.rho),
            stop_at_criteria: self.stop_at_criteria.or(base.stop_at_criteria),
            center: self.center.clone().or(base.center),
        })
    }
}

fn read_config(path: &Path) -> Result<RunArgs> {
    let text = fs::read_to_string(path).map_err(|e| Error::InvalidParameter(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::InvalidParameter(format!("{}: {e}", path.display())))
}

/// Fully resolved run configuration.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub experiment: Experiment,
    pub gamma_rule: GammaRule,
    pub inertia: InertiaSchedule,
    pub allow_negative_inertia: bool,
    pub lambda: f64,
    pub iters: usize,
    pub tol: f64,
    pub seed: u64,
    pub data: Option<PathBuf>,
    pub test_data: Option<PathBuf>,
    pub out: PathBuf,
    pub dim: usize,
    pub blocks: usize,
    pub rho: f64,
    pub stop_at_criteria: bool,
    pub center: Option<Vec<f64>>,
}

impl RunConfig {
    pub fn from_args(args: &RunArgs) -> Result<RunConfig> {
        let a = args.merged()?;
        let experiment = a.experiment.ok_or_else(|| Error::InvalidParameter("--experiment is required".into()))?;
        let gamma_rule = match (a.gamma, a.gamma_rel) {
            (Some(_), Some(_)) => return Err(Error::InvalidParameter("give --gamma or --gamma-rel, not both".into())),
            (Some(g), None) => GammaRule::Absolute(g),
            (None, Some(c)) => GammaRule::Relative(c),
            (None, None) => match experiment {
                Experiment::Markowitz | Experiment::Matcomp => GammaRule::Relative(1.99),
                Experiment::Dnn => GammaRule::Absolute(0.1),
                Experiment::Pathological | Experiment::Custom => GammaRule::Relative(1.0),
            },
        };
        let inertia = match &a.inertia {
            Some(s) => InertiaSchedule::from_str(s)?,
            None => InertiaSchedule::Zero,
        };
        let rho = a.rho.unwrap_or(match experiment {
            Experiment::Matcomp if a.data.is_some() => 8.4,
            Experiment::Matcomp => 0.1,
            _ => 1.0,
        });
        let dim = a.dim.unwrap_or(match experiment {
            Experiment::Markowitz => 30,
            Experiment::Matcomp => 6,
            Experiment::Dnn => 30,
            Experiment::Pathological => 2 * a.blocks.unwrap_or(64),
            Experiment::Custom => a.center.as_ref().map_or(20, Vec::len),
        });
        let cfg = RunConfig {
            experiment,
            gamma_rule,
            inertia,
            allow_negative_inertia: a.allow_negative_inertia.unwrap_or(false),
            lambda: a.lambda.unwrap_or(1.0),
            iters: a.iters.unwrap_or(1000),
            tol: a.tol.unwrap_or(0.0),
            seed: a.seed.unwrap_or(0),
            data: a.data,
            test_data: a.test_data,
            out: a.out.unwrap_or_else(|| PathBuf::from("out")),
            dim,
            blocks: a.blocks.unwrap_or(64),
            rho,
            stop_at_criteria: a.stop_at_criteria.unwrap_or(false),
            center: a.center,
        };
        cfg.check()?;
        Ok(cfg)
    }

    pub fn check(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidParameter(m));
        if let GammaRule::Relative(c) = self.gamma_rule {
            if !(c > 0.0 && c < 2.0) {
                return bad(format!("--gamma-rel must lie in (0, 2), got {c}"));
            }
            if self.experiment == Experiment::Pathological
                && matches!(self.inertia, InertiaSchedule::NesterovTheta(_))
                && c > 1.0
            {
                return bad(format!("theta inertia on the pathological example needs gamma-rel <= 1, got {c}"));
            }
        }
        if let GammaRule::Absolute(g) = self.gamma_rule {
            if !(g > 0.0 && g.is_finite()) {
                return bad(format!("--gamma must be positive, got {g}"));
            }
        }
        if self.iters == 0 {
            return bad("--iters must be at least 1".into());
        }
        if self.dim == 0 {
            return bad("--dim must be at least 1".into());
        }
        if self.test_data.is_some() && self.data.is_none() {
            return bad("--test-data needs --data".into());
        }
        if self.data.is_some() && !matches!(self.experiment, Experiment::Markowitz | Experiment::Matcomp) {
            return bad("--data applies to markowitz and matcomp only".into());
        }
        if let Some(c) = &self.center {
            if c.len() != self.dim {
                return bad(format!("custom center has {} entries, --dim is {}", c.len(), self.dim));
            }
        }
        self.inertia.validate()
    }
}
