//! Seeded random sphere points, rotations and sphere-fixing transformations.

use nalgebra::{DMatrix, DVector};
use rand::Rng;
use rand_distr::StandardNormal;

use crate::models::{LorentzMatrix, SpherePoint};

/// A uniformly distributed point of `S^d`.
pub fn random_sphere_point<R: Rng + ?Sized>(rng: &mut R, d: usize) -> SpherePoint {
    loop {
        let v = DVector::from_fn(d + 1, |_, _| rng.sample::<f64, _>(StandardNormal));
        if v.norm() > 1e-6 {
            return SpherePoint::normalized(v).expect("nonzero vector");
        }
    }
}

/// A Haar-distributed element of `O(n)`.
pub fn random_orthogonal<R: Rng + ?Sized>(rng: &mut R, n: usize) -> DMatrix<f64> {
    let a = DMatrix::from_fn(n, n, |_, _| rng.sample::<f64, _>(StandardNormal));
    let qr = a.qr();
    let mut q = qr.q();
    let r = qr.r();
    // sign fix on the diagonal of R makes the distribution uniform
    for j in 0..n {
        if r[(j, j)] < 0.0 {
            q.column_mut(j).neg_mut();
        }
    }
    q
}

/// A random rotation followed by a boost in a uniform direction with rapidity
/// uniform in `[0, max_rapidity]`.
pub fn random_lorentz<R: Rng + ?Sized>(rng: &mut R, d: usize, max_rapidity: f64) -> LorentzMatrix {
    let rot = LorentzMatrix::rotation(&random_orthogonal(rng, d + 1)).expect("orthogonal");
    let dir = random_sphere_point(rng, d);
    let rapidity = rng.random::<f64>() * max_rapidity;
    let boost = LorentzMatrix::boost(&dir, rapidity).expect("rapidity within cap");
    boost.compose(&rot)
}

/// `n` uniform sphere points with pairwise chordal distance at least `min_separation`.
pub fn random_configuration<R: Rng + ?Sized>(
    rng: &mut R,
    d: usize,
    n: usize,
    min_separation: f64,
) -> Vec<SpherePoint> {
    let mut points: Vec<SpherePoint> = Vec::with_capacity(n);
    while points.len() < n {
        let p = random_sphere_point(rng, d);
        if points
            .iter()
            .all(|q| q.chordal_distance(&p) >= min_separation)
        {
            points.push(p);
        }
    }
    points
}
