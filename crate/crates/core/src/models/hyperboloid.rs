use nalgebra::DVector;

use super::minkowski::{minkowski_inner, MinkowskiVector};
use crate::error::{Error, Result};

/// Tolerance on the quadratic-form invariants `<x,x> = -1`, `<u,x> = 0`, `<u,u> = 1`.
pub const FORM_TOL: f64 = 1e-10;

/// Largest hyperbolic distance from the apex (or geodesic parameter) accepted
/// before double precision can no longer hold `<x,x> = -1`.
pub const RAPIDITY_CAP: f64 = 40.0;

/// A point of `H^{d+1}` on the upper sheet `<x,x> = -1, x0 > 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct HyperboloidPoint(MinkowskiVector);

impl HyperboloidPoint {
    pub fn new(x: MinkowskiVector) -> Result<Self> {
        if !x.is_finite() {
            return Err(Error::DegenerateInput(
                "non-finite hyperboloid point".into(),
            ));
        }
        let q = x.norm_squared();
        // relative tolerance: entries of size cosh(s) carry O(cosh(s)^2) roundoff in <x,x>
        let scale = x.time() * x.time();
        if (q + 1.0).abs() > FORM_TOL * scale.max(1.0) || x.time() < 1.0 - FORM_TOL {
            return Err(Error::DegenerateInput(format!(
                "not on the upper hyperboloid sheet: <x,x> = {q}, x0 = {}",
                x.time()
            )));
        }
        Ok(HyperboloidPoint(x))
    }

    /// Lifts an arbitrary spatial part onto the sheet by solving for the time coordinate.
    pub fn from_space(space: &[f64]) -> Self {
        let s2: f64 = space.iter().map(|c| c * c).sum();
        HyperboloidPoint(MinkowskiVector::new((1.0 + s2).sqrt(), space))
    }

    /// The apex `(1, 0, ..., 0)` of `H^{d+1}`, for a sphere `S^d`.
    pub fn apex(d: usize) -> Self {
        let mut c = DVector::zeros(d + 2);
        c[0] = 1.0;
        HyperboloidPoint(MinkowskiVector::from_coords(c))
    }

    pub(crate) fn new_unchecked(x: MinkowskiVector) -> Self {
        HyperboloidPoint(x)
    }

    /// Recomputes the time coordinate from the spatial part.
    pub(crate) fn reprojected(x: &MinkowskiVector) -> Self {
        Self::from_space(x.space().as_slice())
    }

    pub fn vector(&self) -> &MinkowskiVector {
        &self.0
    }

    pub fn time(&self) -> f64 {
        self.0.time()
    }

    /// Sphere dimension `d` (the point lives in `H^{d+1}`).
    pub fn sphere_dim(&self) -> usize {
        self.0.len() - 2
    }

    /// Hyperbolic distance from the apex.
    pub fn rapidity(&self) -> f64 {
        // asinh of the spatial norm is exact near the apex where acosh(x0) is not
        self.0.space().norm().asinh()
    }

    pub fn distance(&self, other: &HyperboloidPoint) -> f64 {
        distance(self, other)
    }
}

/// `arcosh(-<x, y>)`, evaluated through the chordal form near the diagonal.
pub fn distance(x: &HyperboloidPoint, y: &HyperboloidPoint) -> f64 {
    // -<x,y> = 1 + <x-y,x-y>/2 avoids cancellation for nearby points
    let diff = x.vector() - y.vector();
    let chord = diff.norm_squared().max(0.0);
    let c = 1.0 + 0.5 * chord;
    if c < 2.0 {
        let t = 0.5 * chord;
        (t * (2.0 + t)).sqrt().asinh()
    } else {
        (-minkowski_inner(x.vector(), y.vector())).acosh()
    }
}

/// `cosh(s) x + sinh(s) u` for a unit tangent vector `u` at `x`.
pub fn geodesic_point(
    x: &HyperboloidPoint,
    u: &MinkowskiVector,
    s: f64,
) -> Result<HyperboloidPoint> {
    if !s.is_finite() || s.abs() > RAPIDITY_CAP {
        return Err(Error::IllConditioned(format!(
            "geodesic parameter {s} exceeds the rapidity cap {RAPIDITY_CAP}"
        )));
    }
    let xv = x.vector();
    let scale = xv.time().max(1.0);
    if minkowski_inner(u, xv).abs() > FORM_TOL * scale * scale.max(u.time().abs()) {
        return Err(Error::DegenerateInput(
            "direction is not tangent at x".into(),
        ));
    }
    if (u.norm_squared() - 1.0).abs() > FORM_TOL * u.time().abs().max(1.0).powi(2) {
        return Err(Error::DegenerateInput(
            "direction is not a unit vector".into(),
        ));
    }
    let p = &(xv * s.cosh()) + &(u * s.sinh());
    Ok(HyperboloidPoint(p))
}
