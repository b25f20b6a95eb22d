//! The inertial forward-Douglas-Rachford iteration and its controls.

pub mod certificate;
pub mod diagnostics;
pub mod multivariate;
pub mod restart;
pub mod run;
pub mod schedule;
pub mod state;
pub mod step;

pub use certificate::{find_certificate, max_fixed_tau, validate_params};
pub use diagnostics::{compute_en, fixed_point_residual};
pub use multivariate::{run_multivariate, Block, BlockCoupling, BlockProblem, MultiRunOutput};
pub use restart::{restart_decide, PsiMode, PsiObservation};
pub use run::{run, run_with_callback, run_with_restart, run_with_restart_callback, Control, RunOutput};
pub use schedule::{next_tau, theta};
pub use state::{IterateState, StepRecord};
pub use step::{ifdr_step, step_with};
