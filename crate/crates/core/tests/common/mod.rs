//! Independent numerical oracles shared by the integration tests.
#![allow(dead_code)]

use horocenter::models::{
    geodesic_point, tangent_basis, HyperboloidPoint, LorentzMatrix, MinkowskiVector, SpherePoint,
};
use horocenter::sampling::{random_orthogonal, random_sphere_point};
use nalgebra::{DMatrix, DVector};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Golden-section search for the minimum of a unimodal function on `[a, b]`.
pub fn golden_section(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, tol: f64) -> f64 {
    let r = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - r * (b - a);
    let mut d = a + r * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    while (b - a).abs() > tol {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - r * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + r * (b - a);
            fd = f(d);
        }
    }
    (a + b) / 2.0
}

/// `f(γ(s))` along the unit-speed geodesic through `x` with initial velocity `u`.
pub fn along(
    f: &impl Fn(&HyperboloidPoint) -> f64,
    x: &HyperboloidPoint,
    u: &MinkowskiVector,
    s: f64,
) -> f64 {
    f(&geodesic_point(x, u, s).unwrap())
}

/// Central first difference along a geodesic.
pub fn fd_first(
    f: &impl Fn(&HyperboloidPoint) -> f64,
    x: &HyperboloidPoint,
    u: &MinkowskiVector,
    h: f64,
) -> f64 {
    (along(f, x, u, h) - along(f, x, u, -h)) / (2.0 * h)
}

/// Central second difference along a geodesic, divided by `h²`.
pub fn fd_second(
    f: &impl Fn(&HyperboloidPoint) -> f64,
    x: &HyperboloidPoint,
    u: &MinkowskiVector,
    h: f64,
) -> f64 {
    (along(f, x, u, h) - 2.0 * f(x) + along(f, x, u, -h)) / (h * h)
}

/// Finite-difference gradient in the transported tangent basis at `x`.
pub fn fd_gradient(
    f: &impl Fn(&HyperboloidPoint) -> f64,
    x: &HyperboloidPoint,
    h: f64,
) -> DVector<f64> {
    let basis = tangent_basis(x);
    DVector::from_iterator(basis.len(), basis.iter().map(|e| fd_first(f, x, e, h)))
}

/// Finite-difference Hessian in the transported tangent basis at `x`, by
/// polarization of second differences along `e_i ± e_j`.
pub fn fd_hessian(
    f: &impl Fn(&HyperboloidPoint) -> f64,
    x: &HyperboloidPoint,
    h: f64,
) -> DMatrix<f64> {
    let basis = tangent_basis(x);
    let k = basis.len();
    let mut m = DMatrix::zeros(k, k);
    for i in 0..k {
        m[(i, i)] = fd_second(f, x, &basis[i], h);
    }
    let s = std::f64::consts::FRAC_1_SQRT_2;
    for i in 0..k {
        for j in 0..i {
            let plus = &(&basis[i] + &basis[j]) * s;
            let minus = &(&basis[i] - &basis[j]) * s;
            let v = (fd_second(f, x, &plus, h) - fd_second(f, x, &minus, h)) / 2.0;
            m[(i, j)] = v;
            m[(j, i)] = v;
        }
    }
    m
}

/// Unit tangent vector at `x` from arbitrary coefficients in the transported basis.
pub fn unit_tangent(x: &HyperboloidPoint, coeffs: &[f64]) -> MinkowskiVector {
    let basis = tangent_basis(x);
    let mut v = MinkowskiVector::zeros(basis.len() + 1);
    for (e, c) in basis.iter().zip(coeffs) {
        v = &v + &(e * *c);
    }
    let n = v.norm_squared().sqrt();
    &v * (1.0 / n)
}

pub fn sorted(mut v: Vec<f64>) -> Vec<f64> {
    v.sort_by(f64::total_cmp);
    v
}

pub fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

/// Point at hyperbolic distance uniform in `[0, max_dist)` from the apex in a uniform direction.
pub fn random_point(rng: &mut ChaCha8Rng, d: usize, max_dist: f64) -> HyperboloidPoint {
    let dir = random_sphere_point(rng, d);
    let s = rng.random::<f64>() * max_dist;
    HyperboloidPoint::from_space((dir.coords() * s.sinh()).as_slice())
}

/// A rotation (as a Lorentz matrix) sending `v` to `-e1`: a random rotation
/// followed by a Householder reflection.
pub fn rotation_taking_to_minus_e1(rng: &mut ChaCha8Rng, v: &SpherePoint) -> LorentzMatrix {
    let n = v.ambient_dim();
    let q = random_orthogonal(rng, n);
    let w = &q * v.coords();
    let mut target = nalgebra::DVector::zeros(n);
    target[0] = -1.0;
    let u = &w - &target;
    let house = if u.norm() < 1e-12 {
        nalgebra::DMatrix::identity(n, n)
    } else {
        let u = u.normalize();
        nalgebra::DMatrix::identity(n, n) - &u * u.transpose() * 2.0
    };
    LorentzMatrix::rotation(&(house * q)).unwrap()
}
