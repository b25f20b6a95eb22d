mod common;

use common::*;
use ifdr::model::{Point, ProxTerm};
use ifdr::prox::*;
use proptest::prelude::*;
use rand::Rng;

fn pt(v: &[f64]) -> Point {
    Point::new(v.to_vec()).unwrap()
}

fn mat(d: usize, v: Vec<f64>) -> Point {
    Point::matrix(d, d, v).unwrap()
}

#[test]
fn simplex_examples() {
    assert_eq!(project_simplex(&pt(&[0.2, 0.3, 0.5])).values(), &[0.2, 0.3, 0.5]);
    assert_eq!(project_simplex(&pt(&[10.0, 0.0, 0.0])).values(), &[1.0, 0.0, 0.0]);
}

#[test]
fn simplex_matches_support_enumeration() {
    let mut r = rng(1);
    for _ in 0..200 {
        let d = 1 + (r.random_range(0..8usize));
        let x = uniform_vec(&mut r, d, 2.0);
        let got = project_simplex(&pt(&x));
        assert!(max_abs_diff(got.values(), &simplex_oracle(&x)) <= 1e-8);
        assert!((got.values().iter().sum::<f64>() - 1.0).abs() <= 1e-12);
        assert!(got.values().iter().all(|v| *v >= -1e-15));
    }
}

#[test]
fn halfspace_examples_and_oracle() {
    let a = pt(&[1.0, 0.0]);
    assert_eq!(project_halfspace(&pt(&[0.0, 0.0]), &a, 1.0).unwrap().values(), &[1.0, 0.0]);
    assert_eq!(project_halfspace(&pt(&[2.0, 5.0]), &a, 1.0).unwrap().values(), &[2.0, 5.0]);
    assert!(project_halfspace(&pt(&[1.0, 1.0]), &pt(&[0.0, 0.0]), 1.0).is_err());
    assert!(project_halfspace(&pt(&[1.0, 1.0]), &pt(&[1.0]), 1.0).is_err());

    let mut r = rng(2);
    for _ in 0..200 {
        let d = 1 + r.random_range(0..8usize);
        let x = uniform_vec(&mut r, d, 3.0);
        let a = uniform_vec(&mut r, d, 1.0);
        let b = r.random_range(-2.0..2.0);
        let got = project_halfspace(&pt(&x), &pt(&a), b).unwrap();
        assert!(max_abs_diff(got.values(), &halfspace_oracle(&x, &a, b)) <= 1e-8);
        let ax: f64 = got.values().iter().zip(&a).map(|(p, q)| p * q).sum();
        assert!(ax >= b - 1e-12);
    }
}

#[test]
fn box_and_nonneg() {
    assert_eq!(project_box(&pt(&[0.0, 3.0, 9.0]), 1.0, 5.0).unwrap().values(), &[1.0, 3.0, 5.0]);
    assert_eq!(project_box(&pt(&[2.0, 4.0]), 1.0, 5.0).unwrap().values(), &[2.0, 4.0]);
    assert!(project_box(&pt(&[0.0]), 2.0, 1.0).is_err());
    assert_eq!(project_nonneg(&pt(&[-1.0, 2.0])).values(), &[0.0, 2.0]);
    assert_eq!(project_nonneg(&pt(&[-1.0, -2.0])).values(), &[0.0, 0.0]);

    let mut r = rng(3);
    for _ in 0..200 {
        let d = 1 + r.random_range(0..8usize);
        let x = uniform_vec(&mut r, d, 8.0);
        let got = project_box(&pt(&x), 1.0, 5.0).unwrap();
        assert!(max_abs_diff(got.values(), &box_oracle(&x, 1.0, 5.0)) <= 1e-8);
        let got = project_nonneg(&pt(&x));
        assert!(max_abs_diff(got.values(), &box_oracle(&x, 0.0, 1e3)) <= 1e-8);
    }
}

#[test]
fn psd_examples() {
    let diag = mat(2, vec![1.0, 0.0, 0.0, -2.0]);
    assert_eq!(project_psd(&diag).unwrap().values(), &[1.0, 0.0, 0.0, 0.0]);
    let mut r = rng(4);
    let q = random_psd(&mut r, 4, 4, 1.0);
    assert!(max_abs_diff(project_psd(&mat(4, q.clone())).unwrap().values(), &q) <= 1e-10);
    assert!(project_psd(&Point::matrix(2, 3, vec![0.0; 6]).unwrap()).is_err());
    assert!(project_psd(&pt(&[1.0, 2.0])).is_err());
}

#[test]
fn psd_matches_jacobi_and_beats_sampled_cone_points() {
    let mut r = rng(5);
    for _ in 0..120 {
        let d = 1 + r.random_range(0..6usize);
        let x = uniform_vec(&mut r, d * d, 2.0);
        let got = project_psd(&mat(d, x.clone())).unwrap();
        assert!(max_abs_diff(got.values(), &psd_oracle(&x, d)) <= 1e-8);
        assert!(min_eig(got.values(), d) >= -1e-10);
        let best = dist(got.values(), &x);
        for _ in 0..20 {
            let rank = 1 + r.random_range(0..d);
            let scale = r.random_range(0.01..2.0);
            let q = random_psd(&mut r, d, rank, scale);
            assert!(best <= dist(&q, &x) + 1e-8);
            // perturbations of the candidate that stay in the cone
            let nearby: Vec<f64> = got.values().iter().zip(&q).map(|(g, qi)| g + 1e-3 * qi).collect();
            assert!(best <= dist(&nearby, &x) + 1e-8);
        }
    }
}

#[test]
fn nuclear_examples() {
    let zero = Point::zeros_matrix(3, 4);
    assert_eq!(prox_nuclear(&zero, 0.5).unwrap().values(), zero.values());
    // 5 * u v^T with unit u, v
    let u = [0.6, 0.8];
    let v = [1.0 / 3.0, 2.0 / 3.0, 2.0 / 3.0];
    let x: Vec<f64> = u.iter().flat_map(|a| v.iter().map(move |b| 5.0 * a * b)).collect();
    let got = prox_nuclear(&Point::matrix(2, 3, x.clone()).unwrap(), 2.0).unwrap();
    let want: Vec<f64> = x.iter().map(|e| e * 3.0 / 5.0).collect();
    assert!(max_abs_diff(got.values(), &want) <= 1e-12);
    assert!(prox_nuclear(&pt(&[1.0]), 1.0).is_err());
    assert!(prox_nuclear(&zero, 0.0).is_err());
}

fn prox_objective(y: &[f64], x: &[f64], t: f64, m: usize, p: usize) -> f64 {
    0.5 * dist(y, x).powi(2) + t * nuclear_norm_oracle(y, m, p)
}

#[test]
fn nuclear_matches_gram_path_and_is_not_improvable() {
    let mut r = rng(6);
    for case in 0..120 {
        let (m, p) = if case == 0 { (3, 4) } else { (1 + r.random_range(0..6usize), 1 + r.random_range(0..6usize)) };
        let t = if case == 0 { 0.7 } else { r.random_range(0.05..1.5) };
        let x = uniform_vec(&mut r, m * p, 2.0);
        let got = prox_nuclear(&Point::matrix(m, p, x.clone()).unwrap(), t).unwrap();
        assert!(max_abs_diff(got.values(), &nuclear_oracle(&x, m, p, t)) <= 1e-8, "case {case}");
        assert!(nuclear_norm(&got).unwrap() <= nuclear_norm(&Point::matrix(m, p, x.clone()).unwrap()).unwrap() + 1e-10);
        let base = prox_objective(got.values(), &x, t, m, p);
        for _ in 0..10 {
            let dir = uniform_vec(&mut r, m * p, 1.0);
            for eps in [1e-3, -1e-3] {
                let y: Vec<f64> = got.values().iter().zip(&dir).map(|(g, d)| g + eps * d).collect();
                assert!(base <= prox_objective(&y, &x, t, m, p) + 1e-10);
            }
        }
    }
}

#[test]
fn block_subspace_examples_and_oracle() {
    let axis = RotatedBlockSubspace::axis_aligned(2).unwrap();
    assert_eq!(project_block_subspace(&pt(&[1.0, 2.0, 3.0, 4.0]), &axis).unwrap().values(), &[1.0, 0.0, 3.0, 0.0]);
    let s = RotatedBlockSubspace::new(vec![0.3, 1.1]).unwrap();
    let inside = project_block_subspace(&pt(&[1.0, 2.0, 3.0, 4.0]), &s).unwrap();
    assert!(max_abs_diff(project_block_subspace(&inside, &s).unwrap().values(), inside.values()) <= 1e-15);
    assert!(project_block_subspace(&pt(&[1.0, 2.0, 3.0]), &s).is_err());
    assert!(RotatedBlockSubspace::new(vec![2.0]).is_err());

    // rho = 0 reduces to the projection, and gamma rho = 1 halves points of V1
    let q = prox_subspace_plus_quadratic(&pt(&[1.0, 2.0, 3.0, 4.0]), &s, 0.0, 1.0).unwrap();
    assert_eq!(q.values(), inside.values());
    let half = prox_subspace_plus_quadratic(&inside, &s, 2.0, 0.5).unwrap();
    assert!(max_abs_diff(half.values(), &inside.scale(0.5).into_values()) <= 1e-15);

    let mut r = rng(7);
    for _ in 0..200 {
        let n = 1 + r.random_range(0..4usize);
        let angles: Vec<f64> = (0..n).map(|_| r.random_range(0.0..std::f64::consts::FRAC_PI_2)).collect();
        let s = RotatedBlockSubspace::new(angles.clone()).unwrap();
        let x = uniform_vec(&mut r, 2 * n, 3.0);
        let got = project_block_subspace(&pt(&x), &s).unwrap();
        assert!(max_abs_diff(got.values(), &block_subspace_oracle(&x, &angles, 1.0)) <= 1e-8);

        let (rho, gamma) = (r.random_range(0.0..3.0), r.random_range(0.1..2.0));
        let got = prox_subspace_plus_quadratic(&pt(&x), &s, rho, gamma).unwrap();
        // per block: argmin_s (rho gamma / 2) s^2 + 1/2 ||s d - x_k||^2
        let mut want = vec![0.0; 2 * n];
        for (k, z) in angles.iter().enumerate() {
            let d = [z.cos(), z.sin()];
            let deriv = |sc: f64| rho * gamma * sc + d[0] * (sc * d[0] - x[2 * k]) + d[1] * (sc * d[1] - x[2 * k + 1]);
            let sc = argmin_by_derivative(deriv, -10.0, 10.0);
            want[2 * k] = sc * d[0];
            want[2 * k + 1] = sc * d[1];
        }
        assert!(max_abs_diff(got.values(), &want) <= 1e-8);
    }
}

/// Every registered term on 4x4 inputs; the block subspaces see 8 blocks.
/// The flag marks projections.
fn terms(d: usize) -> Vec<(Box<dyn ProxTerm>, usize, bool)> {
    let n = d * d;
    let normal = Point::new((0..n).map(|i| 1.0 + i as f64 * 0.1).collect()).unwrap();
    let angles: Vec<f64> = (0..n / 2).map(|k| 0.1 + 0.15 * k as f64).collect();
    vec![
        (Box::new(Simplex), n, true),
        (Box::new(Halfspace::new(normal, 0.3).unwrap()), n, true),
        (Box::new(BoxSet::new(-0.5, 0.5).unwrap()), n, true),
        (Box::new(NonnegOrthant), n, true),
        (Box::new(PsdCone::new(d)), n, true),
        (Box::new(NuclearNorm::new(0.4, d, d).unwrap()), n, false),
        (Box::new(BlockSubspace(RotatedBlockSubspace::new(angles.clone()).unwrap())), n, true),
        (Box::new(SubspacePlusQuadratic::new(RotatedBlockSubspace::new(angles).unwrap(), 0.7).unwrap()), n, false),
    ]
}

fn as_input(values: &[f64], len: usize, d: usize) -> Point {
    Point::matrix(d, d, values[..len].to_vec()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn projections_are_idempotent(u in prop::collection::vec(-5.0f64..5.0, 16), gamma in 0.1f64..3.0) {
        for (term, len, is_projection) in terms(4) {
            if !is_projection {
                continue;
            }
            let x = as_input(&u, len, 4);
            let p = term.prox(&x, gamma).unwrap();
            let pp = term.prox(&p, gamma).unwrap();
            prop_assert!(pp.distance(&p) <= 1e-12 * x.norm().max(1.0), "{term:?}");
            prop_assert!(term.is_feasible(&p), "{term:?}");
        }
    }

    #[test]
    fn prox_is_firmly_nonexpansive(
        u in prop::collection::vec(-5.0f64..5.0, 16),
        v in prop::collection::vec(-5.0f64..5.0, 16),
        gamma in 0.1f64..3.0,
    ) {
        for (term, len, _) in terms(4) {
            let (a, b) = (as_input(&u, len, 4), as_input(&v, len, 4));
            let (pa, pb) = (term.prox(&a, gamma).unwrap(), term.prox(&b, gamma).unwrap());
            let diff = pa.sub(&pb);
            prop_assert!(diff.norm_squared() <= diff.dot(&a.sub(&b)) + 1e-10, "{term:?}");
            prop_assert!(diff.norm() <= a.distance(&b) + 1e-12, "{term:?}");
            prop_assert!(term.value(&pa).is_finite(), "{term:?}");
        }
    }

    #[test]
    fn simplex_output_is_a_distribution(u in prop::collection::vec(-1e3f64..1e3, 1..40)) {
        let y = project_simplex(&Point::new(u).unwrap());
        prop_assert!((y.values().iter().sum::<f64>() - 1.0).abs() <= 1e-12);
        prop_assert!(y.values().iter().all(|v| *v >= -1e-15));
    }
}
