mod common;

use horocenter::centering::*;
use horocenter::models::*;
use horocenter::sampling::{
    random_configuration, random_lorentz, random_orthogonal, random_sphere_point,
};
use nalgebra::DVector;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn random_cfg(rng: &mut ChaCha8Rng, d: usize, n: usize) -> PointConfiguration {
    PointConfiguration::new(random_configuration(rng, d, n, 1e-6)).unwrap()
}

fn tangent_coords(v: &MinkowskiVector, x: &HyperboloidPoint) -> DVector<f64> {
    let basis = tangent_basis(x);
    DVector::from_iterator(basis.len(), basis.iter().map(|e| v.inner(e)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn centering_certificate(seed in any::<u64>(), d in 1usize..=3, n in prop::sample::select(vec![3usize, 4, 10, 100])) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let cfg = random_cfg(&mut rng, d, n);
        let solver = SolverConfig::default();
        let res = center(&cfg, &solver).unwrap();
        prop_assert!(res.residual <= 10.0 * n as f64 * solver.grad_tol);
        let sum = res.centered_points.iter().fold(DVector::zeros(d + 1), |acc, p| acc + p.coords());
        prop_assert!((sum.norm() - res.residual).abs() < 1e-12);
        for p in &res.centered_points {
            prop_assert!((p.coords().norm() - 1.0).abs() < 1e-10);
        }
        prop_assert!(res.objective_history.windows(2).all(|w| w[1] <= w[0]));
        if res.iterations > 0 {
            prop_assert!(res.objective_history[1] < res.objective_history[0]);
        }
        let m = objective_hessian(&cfg, &res.minimizer).matrix(&tangent_basis(&res.minimizer));
        prop_assert!(m.symmetric_eigen().eigenvalues.min() > 0.0);
    }

    #[test]
    fn moebius_equivariance(seed in any::<u64>(), d in 1usize..=3, n in 3usize..12) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let cfg = random_cfg(&mut rng, d, n);
        let m = random_lorentz(&mut rng, d, 2.0);
        let a = center(&cfg, &SolverConfig::default()).unwrap();
        let b = center(&cfg.transformed(&m).unwrap(), &SolverConfig::default()).unwrap();
        prop_assert!(verify_uniqueness(&a, &b).unwrap() <= 1e-8);
    }

    #[test]
    fn rotation_equivariance(seed in any::<u64>(), d in 1usize..=3, n in 3usize..12) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let cfg = random_cfg(&mut rng, d, n);
        let q = random_orthogonal(&mut rng, d + 1);
        let rotated = cfg.transformed(&LorentzMatrix::rotation(&q).unwrap()).unwrap();
        let a = center(&cfg, &SolverConfig::default()).unwrap();
        let b = center(&rotated, &SolverConfig::default()).unwrap();
        for (pa, pb) in a.centered_points.iter().zip(&b.centered_points) {
            prop_assert!((&q * pa.coords() - pb.coords()).amax() < 1e-9);
        }
    }

    #[test]
    fn minimizer_is_independent_of_point_order(seed in any::<u64>(), d in 1usize..=3, n in 3usize..12) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let cfg = random_cfg(&mut rng, d, n);
        let mut reversed = cfg.points().to_vec();
        reversed.reverse();
        let a = find_min_distance_point(&cfg, &SolverConfig::default()).unwrap();
        let b = find_min_distance_point(&PointConfiguration::new(reversed).unwrap(), &SolverConfig::default()).unwrap();
        prop_assert!(distance(&a, &b) < 1e-9);
    }

    #[test]
    fn gradient_is_tangent_and_matches_fd(seed in any::<u64>(), d in 1usize..=3, n in 3usize..8) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let cfg = random_cfg(&mut rng, d, n);
        let x = common::random_point(&mut rng, d, 2.0);
        let g = objective_gradient(&cfg, &x);
        prop_assert!(g.inner(x.vector()).abs() < 1e-10 * x.time() * x.time() * n as f64);
        let f = |y: &HyperboloidPoint| objective(&cfg, y);
        let fd = common::fd_gradient(&f, &x, 1e-5);
        let exact = tangent_coords(&g, &x);
        prop_assert!((fd - &exact).norm() <= 1e-6 * exact.norm());
    }

    #[test]
    fn hessian_matches_fd(seed in any::<u64>(), d in 1usize..=3, n in 3usize..8) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let cfg = random_cfg(&mut rng, d, n);
        let x = common::random_point(&mut rng, d, 2.0);
        let f = |y: &HyperboloidPoint| objective(&cfg, y);
        let fd = common::fd_hessian(&f, &x, 1e-3);
        let exact = objective_hessian(&cfg, &x).matrix(&tangent_basis(&x));
        prop_assert!((fd - &exact).norm() <= 1e-4 * exact.norm());
        prop_assert!(exact.symmetric_eigen().eigenvalues.min() > 0.0);
    }
}

#[test]
fn three_points_match_golden_section_oracle() {
    let cfg = PointConfiguration::new(vec![
        SpherePoint::from_slice(&[1.0, 0.0]).unwrap(),
        SpherePoint::from_slice(&[0.0, 1.0]).unwrap(),
        SpherePoint::from_slice(&[-1.0, 0.0]).unwrap(),
    ])
    .unwrap();
    let f = |y: f64| 2.0 * (1.0 + y * y).ln() - (1.0 - y).ln() - 3.0 * (1.0 + y).ln();
    let y_star = common::golden_section(f, -0.99, 0.99, 1e-12);
    // root of y² - 4y + 1 on (-1, 1)
    assert!((y_star - (2.0 - 3f64.sqrt())).abs() < 1e-7);
    let x = find_min_distance_point(&cfg, &SolverConfig::default()).unwrap();
    let p = hyperboloid_to_ball(&x);
    assert!(p.coords()[0].abs() < 1e-14);
    assert!((p.coords()[1] - y_star).abs() < 1e-7);
    assert!((p.coords()[1] - (2.0 - 3f64.sqrt())).abs() < 1e-12);
    let r3 = 3f64.sqrt();
    assert!((x.time() - 2.0 / r3).abs() < 1e-12);
    assert!((x.vector().space()[1] - 1.0 / r3).abs() < 1e-12);
}

#[test]
fn fifty_points_on_the_two_sphere() {
    let mut rng = ChaCha8Rng::seed_from_u64(50);
    let cfg = random_cfg(&mut rng, 2, 50);
    let res = center(&cfg, &SolverConfig::default()).unwrap();
    assert!(res.residual <= 1e-9);
}

#[test]
fn rotated_result_has_zero_gram_discrepancy() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let cfg = random_cfg(&mut rng, 2, 20);
    let a = center(&cfg, &SolverConfig::default()).unwrap();
    let q = random_orthogonal(&mut rng, 3);
    let mut b = a.clone();
    for p in &mut b.centered_points {
        *p = SpherePoint::normalized(&q * p.coords()).unwrap();
    }
    assert!(verify_uniqueness(&a, &b).unwrap() < 1e-12);
}

#[test]
fn objective_grows_toward_the_boundary() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..20 {
        let cfg = random_cfg(&mut rng, 2, 3);
        let u = random_sphere_point(&mut rng, 2);
        let values: Vec<f64> = (2..=12)
            .map(|k| {
                let r = 1.0 - 10f64.powi(-k);
                let p = BallPoint::new(u.coords() * r).unwrap();
                objective(&cfg, &ball_to_hyperboloid(&p).unwrap())
            })
            .collect();
        assert!(values.windows(2).all(|w| w[1] > w[0]), "{values:?}");
    }
}

#[test]
fn clustered_configurations_fail_loudly() {
    let base = DVector::from_column_slice(&[0.0, 0.0, 1.0]);
    let pts: Vec<SpherePoint> = [[1e-4, 0.0], [0.0, 1e-4], [-1e-4, -1e-4]]
        .iter()
        .map(|o| {
            SpherePoint::normalized(&base + DVector::from_column_slice(&[o[0], o[1], 0.0])).unwrap()
        })
        .collect();
    let cfg = PointConfiguration::new(pts).unwrap();
    let solver = SolverConfig {
        rapidity_cap: 5.0,
        ..SolverConfig::default()
    };
    assert!(matches!(
        center(&cfg, &solver),
        Err(horocenter::Error::IllConditioned(_))
    ));
    // with the default cap the minimizer near distance log(1e4) is reachable
    let res = center(&cfg, &SolverConfig::default()).unwrap();
    assert!(res.residual <= 30.0 * 1e-12);
}
