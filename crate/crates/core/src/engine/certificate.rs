//! Sufficient conditions on `(gamma, lambda, tau)` for convergence of the
//! inertial iteration, and a witness search over `(kappa, delta, sigma)`.

use crate::model::TheoremCertificate;

/// Lower bound `epsilon` on the relaxation sequence.
pub const LAMBDA_FLOOR: f64 = 1e-8;

const KAPPA_POINTS: usize = 64;
const DELTA_SIGMA_POINTS: usize = 32;
const WITNESS_MIN: f64 = 1e-3;
const WITNESS_MAX: f64 = 1e3;
const REFINE_ROUNDS: usize = 4;
/// Bisection stops once the bracket on `tau` is this narrow.
const TAU_RESOLUTION: f64 = 1e-4;

/// `2 beta / (4 beta - gamma)` with `beta = 1 / L`.
pub fn averaging_constant(gamma: f64, lipschitz: f64) -> f64 {
    let beta = 1.0 / lipschitz;
    2.0 * beta / (4.0 * beta - gamma)
}

/// Upper bound on `lambda_n` for the witnesses `(delta, sigma)`.
pub fn lambda_upper_bound(alpha: f64, tau: f64, delta: f64, sigma: f64) -> f64 {
    let common = tau + tau * tau + tau * delta + sigma;
    (delta - tau * common) / (alpha * delta * (1.0 + common))
}

/// Lower bound `delta` must strictly exceed.
pub fn delta_threshold(tau: f64, sigma: f64) -> f64 {
    (tau * tau * (1.0 + tau) + tau * sigma) / (1.0 - tau * tau)
}

/// Checks the three conditions for the supplied witnesses.
pub fn validate_params(
    gamma: f64,
    lipschitz: f64,
    tau: f64,
    lambda: f64,
    kappa: f64,
    delta: f64,
    sigma: f64,
) -> TheoremCertificate {
    let alpha = averaging_constant(gamma, lipschitz);
    let lambda_upper = lambda_upper_bound(alpha, tau, delta, sigma);
    let mut reasons = Vec::new();

    if !(lipschitz > 0.0 && lipschitz.is_finite()) {
        reasons.push(format!("Lipschitz constant must be positive, got {lipschitz}"));
    } else {
        let beta = 1.0 / lipschitz;
        if !(kappa > 0.0 && kappa < 1.0) {
            reasons.push(format!("kappa = {kappa} outside (0, 1)"));
        }
        if !(gamma > 0.0 && gamma < 2.0 * beta * kappa) {
            reasons.push(format!("(i) gamma = {gamma} not in (0, 2 beta kappa) = (0, {})", 2.0 * beta * kappa));
        }
    }
    if !(0.0..1.0).contains(&tau) {
        reasons.push(format!("(ii) tau = {tau} outside [0, 1)"));
    }
    if !(delta > 0.0 && sigma > 0.0) {
        reasons.push(format!("delta = {delta} and sigma = {sigma} must be positive"));
    } else if tau.abs() < 1.0 {
        let threshold = delta_threshold(tau, sigma);
        if !(delta > threshold) {
            reasons.push(format!("delta = {delta} does not exceed {threshold}"));
        }
    }
    if !(alpha > 0.0 && alpha < 1.0) {
        reasons.push(format!("alpha = {alpha} outside (0, 1)"));
    }
    if !(lambda >= LAMBDA_FLOOR && lambda <= lambda_upper) {
        reasons.push(format!("(iii) lambda = {lambda} not in [{LAMBDA_FLOOR}, {lambda_upper}]"));
    }

    TheoremCertificate {
        gamma,
        lipschitz,
        tau,
        lambda,
        epsilon: LAMBDA_FLOOR,
        kappa,
        delta,
        sigma,
        alpha,
        lambda_upper,
        valid: reasons.is_empty(),
        reasons,
    }
}

fn log_grid(lo: f64, hi: f64, points: usize) -> Vec<f64> {
    let (a, b) = (lo.ln(), hi.ln());
    (0..points).map(|i| (a + (b - a) * i as f64 / (points - 1) as f64).exp()).collect()
}

/// Interior log-spaced points of the open interval `(lo, hi)`.
fn open_log_grid(lo: f64, hi: f64, points: usize) -> Vec<f64> {
    let (a, b) = (lo.ln(), hi.ln());
    (1..=points).map(|i| (a + (b - a) * i as f64 / (points + 1) as f64).exp()).collect()
}

/// Slack of condition (iii) and the delta constraint; negative when violated.
fn margin(alpha: f64, tau: f64, lambda: f64, delta: f64, sigma: f64) -> f64 {
    if !(delta > delta_threshold(tau, sigma)) {
        return f64::NEG_INFINITY;
    }
    lambda_upper_bound(alpha, tau, delta, sigma) - lambda
}

/// Best `(delta, sigma)` on the log grid, refined by shrinking local grids.
fn best_delta_sigma(alpha: f64, tau: f64, lambda: f64) -> (f64, f64, f64) {
    let grid = log_grid(WITNESS_MIN, WITNESS_MAX, DELTA_SIGMA_POINTS);
    let mut best = (f64::NEG_INFINITY, grid[0], grid[0]);
    for &delta in &grid {
        for &sigma in &grid {
            let m = margin(alpha, tau, lambda, delta, sigma);
            if m > best.0 {
                best = (m, delta, sigma);
            }
        }
    }
    // local refinement in log space, clamped to the witness range
    let mut span = (WITNESS_MAX / WITNESS_MIN).ln() / (DELTA_SIGMA_POINTS - 1) as f64;
    let (lo, hi) = (WITNESS_MIN.ln(), WITNESS_MAX.ln());
    for _ in 0..REFINE_ROUNDS {
        let (_, d0, s0) = best;
        for i in -4i32..=4 {
            for j in -4i32..=4 {
                let delta = (d0.ln() + span * i as f64 / 4.0).clamp(lo, hi).exp();
                let sigma = (s0.ln() + span * j as f64 / 4.0).clamp(lo, hi).exp();
                let m = margin(alpha, tau, lambda, delta, sigma);
                if m > best.0 {
                    best = (m, delta, sigma);
                }
            }
        }
        span /= 4.0;
    }
    best
}

/// Searches the witness grid for a certificate of `(gamma, tau, lambda)`.
///
/// Returns a valid certificate when one exists on the grid, otherwise the
/// closest (largest slack) invalid one.
pub fn find_certificate(gamma: f64, lipschitz: f64, tau: f64, lambda: f64) -> TheoremCertificate {
    let kappa_lo = (gamma * lipschitz / 2.0).max(f64::MIN_POSITIVE);
    let kappas = if kappa_lo < 1.0 { open_log_grid(kappa_lo, 1.0, KAPPA_POINTS) } else { Vec::new() };
    // kappa enters only condition (i), where every grid point passes
    let kappa = kappas.get(KAPPA_POINTS / 2).copied().unwrap_or(1.0);
    let alpha = averaging_constant(gamma, lipschitz);
    let (_, delta, sigma) = if tau.abs() < 1.0 && alpha > 0.0 {
        best_delta_sigma(alpha, tau, lambda)
    } else {
        (f64::NEG_INFINITY, 1.0, 1.0)
    };
    validate_params(gamma, lipschitz, tau, lambda, kappa, delta, sigma)
}

/// Largest constant `tau` in `[0, 1)` certified for `(gamma, lambda)`,
/// or `0` when none is.
pub fn max_fixed_tau(gamma: f64, lipschitz: f64, lambda: f64) -> f64 {
    if !find_certificate(gamma, lipschitz, 0.0, lambda).valid {
        return 0.0;
    }
    let (mut lo, mut hi) = (0.0, 1.0);
    while hi - lo > TAU_RESOLUTION {
        let mid = 0.5 * (lo + hi);
        if find_certificate(gamma, lipschitz, mid, lambda).valid {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}
