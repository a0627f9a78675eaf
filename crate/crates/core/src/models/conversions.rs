//! Poincaré ball, Klein and upper half-space coordinates, and the maps between
//! them and the hyperboloid.
//!
//! The half-space chart is the inversion in the sphere of radius `√2` centred at
//! `-e1`. It sends `-e1` to infinity, `+e1` to the horizontal origin and the ball
//! centre to height 1. The first half-space coordinate is the height.

use nalgebra::DVector;

use super::hyperboloid::HyperboloidPoint;
use super::minkowski::MinkowskiVector;
use crate::error::{Error, Result};

/// Points this close to the unit sphere are rejected by model changes that divide by `1 - ‖p‖²`.
pub const BOUNDARY_GUARD: f64 = 1e-15;

/// Poincaré ball coordinates, `‖p‖ < 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct BallPoint(DVector<f64>);

impl BallPoint {
    pub fn new(coords: DVector<f64>) -> Result<Self> {
        if !coords.iter().all(|c| c.is_finite()) || coords.norm() >= 1.0 {
            return Err(Error::DegenerateInput(format!(
                "ball point must lie strictly inside the unit ball (norm {})",
                coords.norm()
            )));
        }
        Ok(BallPoint(coords))
    }

    pub fn from_slice(coords: &[f64]) -> Result<Self> {
        Self::new(DVector::from_column_slice(coords))
    }

    pub fn origin(ambient_dim: usize) -> Self {
        BallPoint(DVector::zeros(ambient_dim))
    }

    pub fn coords(&self) -> &DVector<f64> {
        &self.0
    }

    /// Hyperbolic distance in the metric `4 Σdx² / (1 - ‖x‖²)²`.
    pub fn distance(&self, other: &BallPoint) -> f64 {
        let d2 = (&self.0 - &other.0).norm_squared();
        let a = 1.0 - self.0.norm_squared();
        let b = 1.0 - other.0.norm_squared();
        let t = 2.0 * d2 / (a * b);
        // arcosh(1 + t)
        (t * (2.0 + t)).sqrt().asinh()
    }
}

/// Upper half-space coordinates: `height > 0` and a horizontal part in `R^d`.
#[derive(Debug, Clone, PartialEq)]
pub struct HalfSpacePoint {
    height: f64,
    horizontal: DVector<f64>,
}

impl HalfSpacePoint {
    pub fn new(height: f64, horizontal: DVector<f64>) -> Result<Self> {
        if !(height.is_finite() && height > 0.0) || !horizontal.iter().all(|c| c.is_finite()) {
            return Err(Error::DegenerateInput(format!(
                "half-space point needs a finite positive height (got {height})"
            )));
        }
        Ok(HalfSpacePoint { height, horizontal })
    }

    pub fn height(&self) -> f64 {
        self.height
    }

    pub fn horizontal(&self) -> &DVector<f64> {
        &self.horizontal
    }

    /// Hyperbolic distance in the metric `(dx0² + ... + dxd²) / x0²`.
    pub fn distance(&self, other: &HalfSpacePoint) -> f64 {
        let dh = self.height - other.height;
        let d2 = dh * dh + (&self.horizontal - &other.horizontal).norm_squared();
        let t = d2 / (2.0 * self.height * other.height);
        (t * (2.0 + t)).sqrt().asinh()
    }

    fn stacked(&self) -> DVector<f64> {
        let mut v = DVector::zeros(self.horizontal.len() + 1);
        v[0] = self.height;
        v.rows_mut(1, self.horizontal.len())
            .copy_from(&self.horizontal);
        v
    }
}

/// Klein (projective) model coordinates, `‖k‖ < 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct KleinPoint(DVector<f64>);

impl KleinPoint {
    pub fn new(coords: DVector<f64>) -> Result<Self> {
        if !coords.iter().all(|c| c.is_finite()) || coords.norm() >= 1.0 {
            return Err(Error::DegenerateInput(
                "Klein point must lie strictly inside the unit ball".into(),
            ));
        }
        Ok(KleinPoint(coords))
    }

    pub fn coords(&self) -> &DVector<f64> {
        &self.0
    }
}

pub fn ball_to_hyperboloid(p: &BallPoint) -> Result<HyperboloidPoint> {
    let r2 = p.0.norm_squared();
    if p.0.norm() >= 1.0 - BOUNDARY_GUARD {
        return Err(Error::DegenerateInput(
            "ball point too close to the boundary to lift".into(),
        ));
    }
    let denom = 1.0 - r2;
    let space = &p.0 * (2.0 / denom);
    Ok(HyperboloidPoint::new_unchecked(MinkowskiVector::new(
        (1.0 + r2) / denom,
        space.as_slice(),
    )))
}

pub fn hyperboloid_to_ball(x: &HyperboloidPoint) -> BallPoint {
    let v = x.vector();
    BallPoint(v.space() / (1.0 + v.time()))
}

pub fn ball_to_halfspace(p: &BallPoint) -> Result<HalfSpacePoint> {
    let shifted = shift_by_e1(&p.0);
    let n2 = shifted.norm_squared();
    if n2 == 0.0 {
        return Err(Error::DegenerateInput(
            "the point -e1 is sent to infinity in the half-space chart".into(),
        ));
    }
    let mut image = shifted * (2.0 / n2);
    image[0] -= 1.0;
    let height = image[0];
    let horizontal = image.rows(1, image.len() - 1).into_owned();
    HalfSpacePoint::new(height, horizontal)
}

pub fn halfspace_to_ball(h: &HalfSpacePoint) -> BallPoint {
    let shifted = shift_by_e1(&h.stacked());
    let n2 = shifted.norm_squared();
    let mut image = shifted * (2.0 / n2);
    image[0] -= 1.0;
    BallPoint(image)
}

fn shift_by_e1(v: &DVector<f64>) -> DVector<f64> {
    let mut s = v.clone();
    s[0] += 1.0;
    s
}

pub fn klein_to_ball(k: &KleinPoint) -> BallPoint {
    let r2 = k.0.norm_squared();
    BallPoint(&k.0 / (1.0 + (1.0 - r2).max(0.0).sqrt()))
}

pub fn ball_to_klein(p: &BallPoint) -> KleinPoint {
    let r2 = p.0.norm_squared();
    KleinPoint(&p.0 * (2.0 / (1.0 + r2)))
}

pub fn klein_to_hyperboloid(k: &KleinPoint) -> Result<HyperboloidPoint> {
    let r2 = k.0.norm_squared();
    if r2 >= 1.0 - BOUNDARY_GUARD {
        return Err(Error::DegenerateInput(
            "Klein point too close to the boundary to lift".into(),
        ));
    }
    let t = 1.0 / (1.0 - r2).sqrt();
    Ok(HyperboloidPoint::new_unchecked(MinkowskiVector::new(
        t,
        (&k.0 * t).as_slice(),
    )))
}

pub fn hyperboloid_to_klein(x: &HyperboloidPoint) -> KleinPoint {
    let v = x.vector();
    KleinPoint(v.space() / v.time())
}
