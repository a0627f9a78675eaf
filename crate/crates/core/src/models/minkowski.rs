//! Vectors in Minkowski space R^{d+1,1} and the lightlike lifts of sphere points.
//!
//! Coordinate 0 is the time coordinate. The bilinear form is
//! `<x, y> = -x0*y0 + x1*y1 + ... + x_{d+1}*y_{d+1}`.

use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::{DVector, DVectorView};

use crate::error::{Error, Result};

/// Tolerance on `‖v‖ = 1` accepted by [`SpherePoint::new`].
pub const SPHERE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct MinkowskiVector(DVector<f64>);

impl MinkowskiVector {
    pub fn new(time: f64, space: &[f64]) -> Self {
        let mut coords = DVector::zeros(space.len() + 1);
        coords[0] = time;
        coords.rows_mut(1, space.len()).copy_from_slice(space);
        MinkowskiVector(coords)
    }

    /// Wraps raw homogeneous coordinates `(x0, x1, ..., x_{d+1})`.
    pub fn from_coords(coords: DVector<f64>) -> Self {
        assert!(
            coords.len() >= 2,
            "Minkowski vectors need a time and a space part"
        );
        MinkowskiVector(coords)
    }

    pub fn zeros(len: usize) -> Self {
        MinkowskiVector(DVector::zeros(len))
    }

    pub fn time(&self) -> f64 {
        self.0[0]
    }

    pub fn space(&self) -> DVectorView<'_, f64> {
        self.0.rows(1, self.0.len() - 1)
    }

    pub fn coords(&self) -> &DVector<f64> {
        &self.0
    }

    pub fn into_coords(self) -> DVector<f64> {
        self.0
    }

    /// Number of homogeneous coordinates, `d + 2`.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn inner(&self, other: &Self) -> f64 {
        minkowski_inner(self, other)
    }

    /// `<v, v>`; positive for spacelike, zero for lightlike, negative for timelike.
    pub fn norm_squared(&self) -> f64 {
        minkowski_inner(self, self)
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|c| c.is_finite())
    }
}

impl Add for &MinkowskiVector {
    type Output = MinkowskiVector;
    fn add(self, rhs: Self) -> MinkowskiVector {
        MinkowskiVector(&self.0 + &rhs.0)
    }
}

impl Sub for &MinkowskiVector {
    type Output = MinkowskiVector;
    fn sub(self, rhs: Self) -> MinkowskiVector {
        MinkowskiVector(&self.0 - &rhs.0)
    }
}

impl Mul<f64> for &MinkowskiVector {
    type Output = MinkowskiVector;
    fn mul(self, rhs: f64) -> MinkowskiVector {
        MinkowskiVector(&self.0 * rhs)
    }
}

impl Neg for &MinkowskiVector {
    type Output = MinkowskiVector;
    fn neg(self) -> MinkowskiVector {
        MinkowskiVector(-&self.0)
    }
}

pub fn minkowski_inner(a: &MinkowskiVector, b: &MinkowskiVector) -> f64 {
    assert_eq!(a.len(), b.len(), "dimension mismatch");
    -a.time() * b.time() + a.space().dot(&b.space())
}

/// A point of the unit sphere `S^d ⊂ R^{d+1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpherePoint(DVector<f64>);

impl SpherePoint {
    pub fn new(coords: DVector<f64>) -> Result<Self> {
        if coords.is_empty() || !coords.iter().all(|c| c.is_finite()) {
            return Err(Error::DegenerateInput(
                "sphere point must have finite coordinates".into(),
            ));
        }
        let norm = coords.norm();
        if (norm - 1.0).abs() > SPHERE_TOL {
            return Err(Error::DegenerateInput(format!(
                "sphere point has norm {norm}, expected 1"
            )));
        }
        Ok(SpherePoint(coords))
    }

    pub fn from_slice(coords: &[f64]) -> Result<Self> {
        Self::new(DVector::from_column_slice(coords))
    }

    /// Projects a nonzero vector radially onto the sphere.
    pub fn normalized(coords: DVector<f64>) -> Result<Self> {
        let norm = coords.norm();
        if !(norm.is_finite() && norm > 0.0) {
            return Err(Error::DegenerateInput(
                "cannot normalize a zero or non-finite vector".into(),
            ));
        }
        Ok(SpherePoint(coords / norm))
    }

    /// Trusted constructor for values produced by norm-preserving maps.
    pub(crate) fn new_unchecked(coords: DVector<f64>) -> Self {
        SpherePoint(coords)
    }

    pub fn coords(&self) -> &DVector<f64> {
        &self.0
    }

    /// Ambient dimension `d + 1`.
    pub fn ambient_dim(&self) -> usize {
        self.0.len()
    }

    /// Euclidean distance in `R^{d+1}`.
    pub fn chordal_distance(&self, other: &SpherePoint) -> f64 {
        self.0
            .iter()
            .zip(other.0.iter())
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt()
    }

    pub fn lift(&self) -> IdealVector {
        IdealVector(MinkowskiVector::new(1.0, self.0.as_slice()))
    }
}

/// The lightlike lift `(1, v)` of a sphere point `v`.
#[derive(Debug, Clone, PartialEq)]
pub struct IdealVector(MinkowskiVector);

impl IdealVector {
    pub fn vector(&self) -> &MinkowskiVector {
        &self.0
    }

    pub fn sphere_point(&self) -> SpherePoint {
        SpherePoint::new_unchecked(self.0.space().into_owned())
    }
}

impl From<&SpherePoint> for IdealVector {
    fn from(p: &SpherePoint) -> Self {
        p.lift()
    }
}
