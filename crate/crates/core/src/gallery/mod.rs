//! Problem builders, dataset loaders and synthetic generators for the
//! benchmark experiments.

pub mod dnn;
pub mod loaders;
pub mod markowitz;
pub mod matcomp;
pub mod metrics;
pub mod pathological;

pub use dnn::{build_dnn_projection, dykstra_dnn, random_symmetric, DnnStopCriteria};
pub use loaders::{load_movielens, load_movielens_split, load_returns_csv, parse_returns_csv};
pub use markowitz::{build_markowitz, synthetic_returns, test_objective, ReturnsDataset};
pub use matcomp::{build_matrix_completion, synthetic_low_rank, Partition, Rating, RatingsDataset};
pub use metrics::{log_spaced_indices, loglog_slope};
pub use pathological::{build_pathological, AngleRule, PathologicalInstance};
