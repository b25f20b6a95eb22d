//! Points, terms, problems, parameters and traces shared by the rest of the crate.

pub mod certificate;
pub mod params;
pub mod point;
pub mod problem;
pub mod terms;
pub mod trace;

pub use certificate::TheoremCertificate;
pub use params::{InertiaSchedule, LambdaSchedule, SolverParams};
pub use point::Point;
pub use problem::{make_problem, SplitProblem};
pub use terms::{ProxTerm, Quadratic, SmoothTerm, SquaredDistance, Zero};
pub use trace::TraceRecord;
