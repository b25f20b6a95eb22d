//! Reference implementations used as test oracles. None of these call into
//! the prox or engine code they are compared against.
#![allow(dead_code)]

use std::sync::Arc;

use ifdr::model::{make_problem, Point, ProxTerm, SmoothTerm, SplitProblem};
use ifdr::nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn uniform_vec(rng: &mut ChaCha8Rng, n: usize, scale: f64) -> Vec<f64> {
    (0..n).map(|_| rng.random_range(-scale..scale)).collect()
}

pub fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

pub fn l2(a: &[f64]) -> f64 {
    a.iter().map(|v| v * v).sum::<f64>().sqrt()
}

pub fn dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}

/// Cyclic Jacobi eigenvalue iteration for a symmetric row-major matrix.
/// Returns eigenvalues and column eigenvectors (row-major `d x d`).
pub fn jacobi_eigen(a: &[f64], d: usize) -> (Vec<f64>, Vec<f64>) {
    let mut m = a.to_vec();
    let mut v = vec![0.0; d * d];
    for i in 0..d {
        v[i * d + i] = 1.0;
    }
    for _sweep in 0..100 {
        let off: f64 = (0..d)
            .flat_map(|i| (0..d).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| m[i * d + j].powi(2))
            .sum();
        if off < 1e-30 {
            break;
        }
        for p in 0..d {
            for q in p + 1..d {
                let apq = m[p * d + q];
                if apq.abs() < 1e-300 {
                    continue;
                }
                let theta = (m[q * d + q] - m[p * d + p]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..d {
                    let mkp = m[k * d + p];
                    let mkq = m[k * d + q];
                    m[k * d + p] = c * mkp - s * mkq;
                    m[k * d + q] = s * mkp + c * mkq;
                }
                for k in 0..d {
                    let mpk = m[p * d + k];
                    let mqk = m[q * d + k];
                    m[p * d + k] = c * mpk - s * mqk;
                    m[q * d + k] = s * mpk + c * mqk;
                }
                for k in 0..d {
                    let vkp = v[k * d + p];
                    let vkq = v[k * d + q];
                    v[k * d + p] = c * vkp - s * vkq;
                    v[k * d + q] = s * vkp + c * vkq;
                }
            }
        }
    }
    ((0..d).map(|i| m[i * d + i]).collect(), v)
}

/// `V diag(f(lambda)) V^T` from a Jacobi decomposition.
fn spectral_map(a: &[f64], d: usize, f: impl Fn(f64) -> f64) -> Vec<f64> {
    let (vals, v) = jacobi_eigen(a, d);
    let mut out = vec![0.0; d * d];
    for k in 0..d {
        let s = f(vals[k]);
        if s == 0.0 {
            continue;
        }
        for i in 0..d {
            for j in 0..d {
                out[i * d + j] += s * v[i * d + k] * v[j * d + k];
            }
        }
    }
    out
}

pub fn symmetrize(a: &[f64], d: usize) -> Vec<f64> {
    (0..d * d).map(|k| 0.5 * (a[k] + a[(k % d) * d + k / d])).collect()
}

pub fn psd_oracle(x: &[f64], d: usize) -> Vec<f64> {
    spectral_map(&symmetrize(x, d), d, |l| l.max(0.0))
}

pub fn min_eig(x: &[f64], d: usize) -> f64 {
    jacobi_eigen(&symmetrize(x, d), d).0.into_iter().fold(f64::INFINITY, f64::min)
}

/// Random PSD matrix `B B^T` scaled by `scale`.
pub fn random_psd(rng: &mut ChaCha8Rng, d: usize, rank: usize, scale: f64) -> Vec<f64> {
    let b = uniform_vec(rng, d * rank, 1.0);
    let mut out = vec![0.0; d * d];
    for i in 0..d {
        for j in 0..d {
            out[i * d + j] = scale * (0..rank).map(|k| b[i * rank + k] * b[j * rank + k]).sum::<f64>();
        }
    }
    out
}

/// Singular value soft-thresholding through the eigen-decomposition of
/// `X^T X`: `Y = X V diag(max(1 - t / s, 0)) V^T`.
pub fn nuclear_oracle(x: &[f64], m: usize, p: usize, t: f64) -> Vec<f64> {
    let mut xtx = vec![0.0; p * p];
    for i in 0..p {
        for j in 0..p {
            xtx[i * p + j] = (0..m).map(|k| x[k * p + i] * x[k * p + j]).sum();
        }
    }
    let shrink = spectral_map(&xtx, p, |l| {
        let s = l.max(0.0).sqrt();
        if s > t {
            1.0 - t / s
        } else {
            0.0
        }
    });
    let mut out = vec![0.0; m * p];
    for i in 0..m {
        for j in 0..p {
            out[i * p + j] = (0..p).map(|k| x[i * p + k] * shrink[k * p + j]).sum();
        }
    }
    out
}

/// Nuclear norm via the eigenvalues of `X^T X`.
pub fn nuclear_norm_oracle(x: &[f64], m: usize, p: usize) -> f64 {
    let mut xtx = vec![0.0; p * p];
    for i in 0..p {
        for j in 0..p {
            xtx[i * p + j] = (0..m).map(|k| x[k * p + i] * x[k * p + j]).sum();
        }
    }
    jacobi_eigen(&xtx, p).0.iter().map(|l| l.max(0.0).sqrt()).sum()
}

/// Simplex projection by enumerating every support pattern and keeping the
/// closest feasible candidate.
pub fn simplex_oracle(x: &[f64]) -> Vec<f64> {
    let d = x.len();
    let mut best: Option<(f64, Vec<f64>)> = None;
    for mask in 1u32..(1 << d) {
        let support: Vec<usize> = (0..d).filter(|i| mask & (1 << i) != 0).collect();
        let shift = (support.iter().map(|&i| x[i]).sum::<f64>() - 1.0) / support.len() as f64;
        let mut y = vec![0.0; d];
        let mut ok = true;
        for &i in &support {
            y[i] = x[i] - shift;
            ok &= y[i] >= -1e-14;
        }
        if !ok {
            continue;
        }
        let dd = dist(&y, x);
        if best.as_ref().is_none_or(|(b, _)| dd < *b) {
            best = Some((dd, y));
        }
    }
    best.expect("some support is feasible").1
}

/// Halfspace projection by bisection on the step `t >= 0` along `a`:
/// the smallest `t` with `a.(x + t a) >= b`.
pub fn halfspace_oracle(x: &[f64], a: &[f64], b: f64) -> Vec<f64> {
    let dot = |u: &[f64]| u.iter().zip(a).map(|(p, q)| p * q).sum::<f64>();
    if dot(x) >= b {
        return x.to_vec();
    }
    let shifted = |t: f64| x.iter().zip(a).map(|(xi, ai)| xi + t * ai).collect::<Vec<_>>();
    let (mut lo, mut hi) = (0.0, 1.0);
    while dot(&shifted(hi)) < b {
        hi *= 2.0;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if dot(&shifted(mid)) >= b {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    shifted(hi)
}

/// Minimiser over `[lo, hi]` of a convex function with nondecreasing
/// derivative `deriv`, by bisection on the sign of the derivative.
pub fn argmin_by_derivative(deriv: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    if deriv(lo) >= 0.0 {
        return lo;
    }
    if deriv(hi) <= 0.0 {
        return hi;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if deriv(mid) > 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Per-entry minimiser of `(z - x)^2` over `[lo, hi]`.
pub fn box_oracle(x: &[f64], lo: f64, hi: f64) -> Vec<f64> {
    x.iter().map(|&xi| argmin_by_derivative(|z| 2.0 * (z - xi), lo, hi)).collect()
}

/// Per-block projection onto `span(d_k)` via the normal equations
/// `s = (d^T d)^{-1} d^T x`, scaled by `1/(1 + gamma rho)`.
pub fn block_subspace_oracle(x: &[f64], angles: &[f64], scale: f64) -> Vec<f64> {
    let mut out = vec![0.0; x.len()];
    for (k, &z) in angles.iter().enumerate() {
        let d = [z.cos(), z.sin()];
        let dtd = d[0] * d[0] + d[1] * d[1];
        let s = (d[0] * x[2 * k] + d[1] * x[2 * k + 1]) / dtd * scale;
        out[2 * k] = s * d[0];
        out[2 * k + 1] = s * d[1];
    }
    out
}

/// `min (1/m)||A x - b 1||^2` over the simplex intersected with
/// `{a_av^T x >= b}`, by solving the equality-constrained KKT system of every
/// active set and keeping the best feasible stationary point.
pub fn markowitz_oracle(returns: &DMatrix<f64>, means: &[f64], target: f64) -> (Vec<f64>, f64) {
    let (m, n) = (returns.nrows(), returns.ncols());
    let q = returns.transpose() * returns * (2.0 / m as f64);
    let c = returns.transpose() * DVector::from_element(m, 1.0) * (-2.0 * target / m as f64);
    let objective = |x: &DVector<f64>| ((returns * x).add_scalar(-target)).norm_squared() / m as f64;
    let mut best: Option<(f64, Vec<f64>)> = None;
    for zero_mask in 0u32..(1 << n) {
        for halfspace_active in [false, true] {
            let zeros: Vec<usize> = (0..n).filter(|i| zero_mask & (1 << i) != 0).collect();
            let rows = 1 + zeros.len() + usize::from(halfspace_active);
            let mut e = DMatrix::zeros(rows, n);
            let mut rhs = DVector::zeros(rows);
            for j in 0..n {
                e[(0, j)] = 1.0;
            }
            rhs[0] = 1.0;
            for (r, &i) in zeros.iter().enumerate() {
                e[(1 + r, i)] = 1.0;
            }
            if halfspace_active {
                for j in 0..n {
                    e[(rows - 1, j)] = means[j];
                }
                rhs[rows - 1] = target;
            }
            let mut kkt = DMatrix::zeros(n + rows, n + rows);
            kkt.view_mut((0, 0), (n, n)).copy_from(&q);
            kkt.view_mut((0, n), (n, rows)).copy_from(&e.transpose());
            kkt.view_mut((n, 0), (rows, n)).copy_from(&e);
            let mut b = DVector::zeros(n + rows);
            b.rows_mut(0, n).copy_from(&(-&c));
            b.rows_mut(n, rows).copy_from(&rhs);
            let Some(sol) = kkt.lu().solve(&b) else { continue };
            let x = sol.rows(0, n).into_owned();
            let feasible = x.iter().all(|&v| v >= -1e-12)
                && means.iter().zip(x.iter()).map(|(a, v)| a * v).sum::<f64>() >= target - 1e-12;
            if !feasible || !x.iter().all(|v| v.is_finite()) {
                continue;
            }
            let f = objective(&x);
            if best.as_ref().is_none_or(|(bf, _)| f < *bf) {
                best = Some((f, x.iter().copied().collect()));
            }
        }
    }
    let (f, x) = best.expect("feasible active set");
    (x, f)
}

/// Smooth term `1/2 x^T diag(d) x - c^T x` for oracle problems.
#[derive(Debug, Clone)]
pub struct DiagQuadratic {
    pub diag: Vec<f64>,
    pub linear: Vec<f64>,
}

impl SmoothTerm for DiagQuadratic {
    fn value(&self, x: &Point) -> f64 {
        x.values().iter().zip(&self.diag).zip(&self.linear).map(|((v, d), c)| 0.5 * d * v * v - c * v).sum()
    }
    fn gradient(&self, x: &Point) -> Point {
        x.with_values(x.values().iter().zip(&self.diag).zip(&self.linear).map(|((v, d), c)| d * v - c).collect())
    }
    fn lipschitz(&self) -> f64 {
        self.diag.iter().copied().fold(0.0, f64::max)
    }
    fn dimension(&self) -> Option<usize> {
        Some(self.diag.len())
    }
}

/// Random composite problem: halfspace `f`, box `g`, diagonal quadratic `h`.
pub fn composite_problem(seed: u64, dim: usize) -> SplitProblem {
    use ifdr::prox::{BoxSet, Halfspace};
    let mut r = rng(seed);
    let diag: Vec<f64> = (0..dim).map(|_| r.random_range(0.5..4.0)).collect();
    let linear = uniform_vec(&mut r, dim, 3.0);
    let normal = Point::new(uniform_vec(&mut r, dim, 1.0)).unwrap();
    let f: Arc<dyn ProxTerm> = Arc::new(Halfspace::new(normal, 0.5).unwrap());
    let g: Arc<dyn ProxTerm> = Arc::new(BoxSet::new(-1.0, 1.0).unwrap());
    make_problem(f, g, Arc::new(DiagQuadratic { diag, linear }), dim).unwrap()
}

/// Plain three-operator splitting written out directly:
/// `x = P_g(z); y = P_f(2x - z - gamma grad h(x)); z += lambda (y - x)`.
/// Returns the `z` iterates.
pub fn tosm_oracle(p: &SplitProblem, gamma: f64, lambda: f64, z0: Vec<f64>, iters: usize) -> Vec<Vec<f64>> {
    let mut z = z0;
    let mut out = Vec::with_capacity(iters);
    for _ in 0..iters {
        let x = p.g.prox(&Point::new(z.clone()).unwrap(), gamma).unwrap().into_values();
        let gx = p.h.gradient(&Point::new(x.clone()).unwrap()).into_values();
        let mut r = vec![0.0; z.len()];
        for i in 0..z.len() {
            r[i] = 2.0 * x[i] - z[i] - gamma * gx[i];
        }
        let y = p.f.prox(&Point::new(r).unwrap(), gamma).unwrap().into_values();
        for i in 0..z.len() {
            z[i] += lambda * (y[i] - x[i]);
        }
        out.push(z.clone());
    }
    out
}
