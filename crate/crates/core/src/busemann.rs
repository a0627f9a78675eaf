//! Signed distance to a horosphere (the Busemann function of an ideal point),
//! with its Riemannian gradient and Hessian.
//!
//! A [`Horosphere`] is described by its ideal point `v ∈ S^d` and an offset.
//! Offset 0 means the horosphere passes through the apex of the hyperboloid
//! (the centre of the Poincaré ball). With `ℓ = (1, v)`,
//!
//! ```text
//! δ(x) = log(-<x, ℓ>) - offset
//! ```
//!
//! which is negative inside the horoball, zero on the horosphere and positive
//! outside.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::models::{
    BallPoint, HalfSpacePoint, HyperboloidPoint, LorentzMatrix, MinkowskiVector, SpherePoint,
    BOUNDARY_GUARD,
};

#[derive(Debug, Clone, PartialEq)]
pub struct Horosphere {
    pub ideal_point: SpherePoint,
    pub offset: f64,
}

impl Horosphere {
    pub fn new(ideal_point: SpherePoint, offset: f64) -> Self {
        Horosphere {
            ideal_point,
            offset,
        }
    }

    /// The horosphere through the apex with ideal point `v`.
    pub fn through_origin(ideal_point: SpherePoint) -> Self {
        Horosphere {
            ideal_point,
            offset: 0.0,
        }
    }

    /// Image of the horosphere under `m`, so that `δ_{m·h}(m x) = δ_h(x)`.
    pub fn transformed(&self, m: &LorentzMatrix) -> Result<Horosphere> {
        let (l, scale) = m.apply_ideal(&self.ideal_point.lift())?;
        Ok(Horosphere {
            ideal_point: l.sphere_point(),
            offset: self.offset - scale.ln(),
        })
    }
}

/// `-<x, (1, v)> = x0 - xs·v`, evaluated without cancellation.
///
/// Writes `xs = ρ u` with `u` a unit vector; then
/// `x0 - ρ u·v = 1/(x0 + ρ) + ρ ‖u - v‖²/2`.
pub(crate) fn horo_pairing(x: &MinkowskiVector, v: &SpherePoint) -> f64 {
    let space = x.space();
    let rho = space.norm();
    if rho == 0.0 {
        return x.time();
    }
    let gap: f64 = space
        .iter()
        .zip(v.coords().iter())
        .map(|(s, w)| {
            let d = s / rho - w;
            d * d
        })
        .sum();
    1.0 / (x.time() + rho) + 0.5 * rho * gap
}

pub fn delta_hyperboloid(h: &Horosphere, x: &HyperboloidPoint) -> f64 {
    horo_pairing(x.vector(), &h.ideal_point).ln() - h.offset
}

/// `log(‖p - v‖² / (1 - ‖p‖²)) - offset` in Poincaré ball coordinates.
pub fn delta_ball(h: &Horosphere, p: &BallPoint) -> Result<f64> {
    let c = p.coords();
    let r = c.norm();
    if r >= 1.0 - BOUNDARY_GUARD {
        return Err(Error::DegenerateInput(
            "ball point too close to the boundary".into(),
        ));
    }
    let gap = (c - h.ideal_point.coords()).norm_squared();
    Ok((gap / ((1.0 - r) * (1.0 + r))).ln() - h.offset)
}

/// Euclidean-coordinate gradient of [`delta_ball`]: `2(p - v)/‖p - v‖² + 2p/(1 - ‖p‖²)`.
pub fn delta_ball_gradient(h: &Horosphere, p: &BallPoint) -> nalgebra::DVector<f64> {
    let c = p.coords();
    let diff = c - h.ideal_point.coords();
    let r2 = c.norm_squared();
    &diff * (2.0 / diff.norm_squared()) + c * (2.0 / (1.0 - r2))
}

/// Gradient of [`delta_ball`] with respect to the ball metric `4 Σdx² / (1 - ‖x‖²)²`,
/// expressed in ball coordinates.
pub fn delta_ball_metric_gradient(h: &Horosphere, p: &BallPoint) -> nalgebra::DVector<f64> {
    let conformal = 1.0 - p.coords().norm_squared();
    delta_ball_gradient(h, p) * (conformal * conformal / 4.0)
}

/// Signed distance to the horizontal horosphere `height = exp(-offset)` for the
/// ideal point at infinity of the half-space model.
pub fn delta_halfspace_at_infinity(x: &HalfSpacePoint, offset: f64) -> f64 {
    -x.height().ln() - offset
}

/// Riemannian gradient `ℓ/<x,ℓ> + x`, a unit tangent vector at `x`.
pub fn grad_delta(h: &Horosphere, x: &HyperboloidPoint) -> MinkowskiVector {
    let xv = x.vector();
    let l = h.ideal_point.lift();
    let pairing = horo_pairing(xv, &h.ideal_point);
    &(l.vector() * (-1.0 / pairing)) + xv
}

/// Hessian `metric - dδ ⊗ dδ`.
pub fn hess_delta(h: &Horosphere, x: &HyperboloidPoint) -> TangentForm {
    TangentForm {
        metric_weight: 1.0,
        rank_one: vec![grad_delta(h, x)],
    }
}

/// A symmetric bilinear form on a tangent space of `H^{d+1}` of the shape
/// `w·<a,b> - Σ_k <a,g_k><b,g_k>`.
#[derive(Debug, Clone, PartialEq)]
pub struct TangentForm {
    pub metric_weight: f64,
    pub rank_one: Vec<MinkowskiVector>,
}

impl TangentForm {
    pub fn eval(&self, a: &MinkowskiVector, b: &MinkowskiVector) -> f64 {
        let mut value = self.metric_weight * a.inner(b);
        for g in &self.rank_one {
            value -= a.inner(g) * b.inner(g);
        }
        value
    }

    /// Gram matrix of the form in the given tangent basis.
    pub fn matrix(&self, basis: &[MinkowskiVector]) -> DMatrix<f64> {
        let k = basis.len();
        let mut m = DMatrix::zeros(k, k);
        for i in 0..k {
            for j in 0..=i {
                let v = self.eval(&basis[i], &basis[j]);
                m[(i, j)] = v;
                m[(j, i)] = v;
            }
        }
        m
    }
}
