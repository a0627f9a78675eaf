mod common;

use horocenter::models::*;
use horocenter::sampling::{random_lorentz, random_sphere_point};
use nalgebra::DVector;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_ball_point(rng: &mut ChaCha8Rng, d: usize, max_radius: f64) -> BallPoint {
    let dir = random_sphere_point(rng, d);
    let r = rng.random::<f64>() * max_radius;
    BallPoint::new(dir.coords() * r).unwrap()
}

fn random_hyperboloid_point(rng: &mut ChaCha8Rng, d: usize, max_dist: f64) -> HyperboloidPoint {
    let dir = random_sphere_point(rng, d);
    let s = rng.random::<f64>() * max_dist;
    HyperboloidPoint::from_space((dir.coords() * s.sinh()).as_slice())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn ball_hyperboloid_round_trip(seed in any::<u64>(), d in 1usize..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = random_ball_point(&mut rng, d, 0.999);
        let x = ball_to_hyperboloid(&p).unwrap();
        prop_assert!((x.vector().norm_squared() + 1.0).abs() < 1e-10 * x.time() * x.time());
        let back = hyperboloid_to_ball(&x);
        prop_assert!((back.coords() - p.coords()).amax() < 1e-12);
    }

    #[test]
    fn halfspace_round_trip_and_distance(seed in any::<u64>(), d in 1usize..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = random_ball_point(&mut rng, d, 0.95);
        let q = random_ball_point(&mut rng, d, 0.95);
        let hp = ball_to_halfspace(&p).unwrap();
        let hq = ball_to_halfspace(&q).unwrap();
        prop_assert!((halfspace_to_ball(&hp).coords() - p.coords()).amax() < 1e-12);
        let db = p.distance(&q);
        prop_assert!((db - hp.distance(&hq)).abs() < 1e-10);
        let dh = distance(&ball_to_hyperboloid(&p).unwrap(), &ball_to_hyperboloid(&q).unwrap());
        prop_assert!((db - dh).abs() < 1e-10);
    }

    #[test]
    fn klein_round_trip_and_tanh_halving(seed in any::<u64>(), d in 1usize..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let u = random_sphere_point(&mut rng, d);
        let s = rng.random::<f64>() * 6.0;
        let k = KleinPoint::new(u.coords() * s.tanh()).unwrap();
        let p = klein_to_ball(&k);
        prop_assert!((p.coords() - u.coords() * (s / 2.0).tanh()).amax() < 1e-12);
        prop_assert!((ball_to_klein(&p).coords() - k.coords()).amax() < 1e-12);
        // both charts describe the hyperboloid point (cosh s, sinh s u)
        let x = klein_to_hyperboloid(&k).unwrap();
        let expected = HyperboloidPoint::from_space((u.coords() * s.sinh()).as_slice());
        prop_assert!((x.vector() - expected.vector()).coords().amax() < 1e-10 * s.cosh());
        prop_assert!((hyperboloid_to_klein(&x).coords() - k.coords()).amax() < 1e-12);
    }

    #[test]
    fn geodesics_are_unit_speed(seed in any::<u64>(), d in 1usize..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = random_hyperboloid_point(&mut rng, d, 3.0);
        let coeffs: Vec<f64> = (0..=d).map(|_| rng.random::<f64>() - 0.5).collect();
        let u = common::unit_tangent(&x, &coeffs);
        let s1 = rng.random::<f64>() * 6.0 - 3.0;
        let s2 = rng.random::<f64>() * 6.0 - 3.0;
        let a = geodesic_point(&x, &u, s1).unwrap();
        let b = geodesic_point(&x, &u, s2).unwrap();
        let scale = a.time() * b.time();
        prop_assert!((a.vector().norm_squared() + 1.0).abs() < 1e-10 * a.time() * a.time());
        prop_assert!((distance(&a, &b) - (s1 - s2).abs()).abs() < 1e-10 * scale.max(1.0));
    }

    #[test]
    fn lorentz_maps_are_isometries(seed in any::<u64>(), d in 1usize..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = random_lorentz(&mut rng, d, 2.0);
        let x = random_hyperboloid_point(&mut rng, d, 2.0);
        let y = random_hyperboloid_point(&mut rng, d, 2.0);
        let (mx, my) = (apply_lorentz(&m, &x), apply_lorentz(&m, &y));
        prop_assert!((mx.vector().norm_squared() + 1.0).abs() < 1e-10 * mx.time() * mx.time());
        prop_assert!((minkowski_inner(mx.vector(), my.vector()) - minkowski_inner(x.vector(), y.vector())).abs() < 1e-10 * mx.time() * my.time());
        prop_assert!((distance(&mx, &my) - distance(&x, &y)).abs() < 1e-10 * mx.time() * my.time());
        prop_assert!(m.defect() < 1e-10 * m.entries()[(0, 0)].powi(2));
    }

    #[test]
    fn boost_to_origin_reaches_apex(seed in any::<u64>(), d in 1usize..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = random_hyperboloid_point(&mut rng, d, 5.0);
        let m = boost_to_origin(&x).unwrap();
        let y = apply_lorentz(&m, &x);
        prop_assert!((y.vector() - HyperboloidPoint::apex(d).vector()).coords().amax() < 1e-10 * x.time());
        prop_assert!(m.defect() < 1e-10 * x.time() * x.time());
        // pure boost: symmetric matrix
        prop_assert!((m.entries() - m.entries().transpose()).amax() == 0.0);
    }

    #[test]
    fn moebius_images_are_unit(seed in any::<u64>(), d in 1usize..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = random_lorentz(&mut rng, d, 3.0);
        let v = random_sphere_point(&mut rng, d);
        let w = induced_moebius(&m, &v).unwrap();
        prop_assert!((w.coords().norm() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn cross_ratio_on_the_circle_is_preserved(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = random_lorentz(&mut rng, 1, 1.5);
        let pts: Vec<SpherePoint> = (0..4).map(|_| random_sphere_point(&mut rng, 1)).collect();
        let images: Vec<SpherePoint> = pts.iter().map(|p| induced_moebius(&m, p).unwrap()).collect();
        let cr = |p: &[SpherePoint]| {
            let z: Vec<num_complex_lite::C> = p.iter().map(|q| num_complex_lite::C(q.coords()[0], q.coords()[1])).collect();
            num_complex_lite::abs_cross_ratio(&z)
        };
        let (a, b) = (cr(&pts), cr(&images));
        prop_assert!((a - b).abs() < 1e-9 * a.max(1.0), "{a} vs {b}");
    }
}

/// Minimal complex arithmetic for the cross-ratio oracle.
mod num_complex_lite {
    #[derive(Clone, Copy)]
    pub struct C(pub f64, pub f64);

    fn sub(a: C, b: C) -> C {
        C(a.0 - b.0, a.1 - b.1)
    }

    fn abs(a: C) -> f64 {
        a.0.hypot(a.1)
    }

    /// `|(z1 - z3)(z2 - z4) / ((z2 - z3)(z1 - z4))|`
    pub fn abs_cross_ratio(z: &[C]) -> f64 {
        abs(sub(z[0], z[2])) * abs(sub(z[1], z[3])) / (abs(sub(z[1], z[2])) * abs(sub(z[0], z[3])))
    }
}

#[test]
fn identity_leaves_everything_fixed() {
    let x = HyperboloidPoint::from_space(&[0.2, -0.4, 1.0]);
    assert_eq!(apply_lorentz(&LorentzMatrix::identity(2), &x), x);
    let v = SpherePoint::normalized(DVector::from_column_slice(&[1.0, 2.0, 3.0])).unwrap();
    let (l, t) = LorentzMatrix::identity(2).apply_ideal(&v.lift()).unwrap();
    assert_eq!(t, 1.0);
    assert_eq!(l.sphere_point(), v);
}
