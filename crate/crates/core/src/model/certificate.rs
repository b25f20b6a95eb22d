use serde::{Deserialize, Serialize};

/// Outcome of checking the step-size / relaxation / inertia conditions for
/// a specific set of witnesses `(kappa, delta, sigma)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TheoremCertificate {
    pub gamma: f64,
    pub lipschitz: f64,
    pub tau: f64,
    pub lambda: f64,
    pub epsilon: f64,
    pub kappa: f64,
    pub delta: f64,
    pub sigma: f64,
    /// `2 beta / (4 beta - gamma)` with `beta = 1 / L`.
    pub alpha: f64,
    pub lambda_upper: f64,
    pub valid: bool,
    /// Failed conditions, empty when valid.
    pub reasons: Vec<String>,
}
