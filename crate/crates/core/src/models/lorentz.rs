//! Orthochronous Lorentz matrices acting as hyperbolic isometries and as
//! Möbius transformations of the ideal sphere.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use super::hyperboloid::{HyperboloidPoint, FORM_TOL, RAPIDITY_CAP};
use super::minkowski::{IdealVector, MinkowskiVector, SpherePoint};
use crate::error::{Error, Result};

/// Smallest acceptable time component of an image of a lightlike vector.
pub const LIGHTLIKE_TIME_FLOOR: f64 = 1e-14;

/// An element of `O(d+1,1)` with positive top-left entry.
///
/// Each coset of `O(d+1,1)/{±1}` has exactly one such representative.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<f64>>", into = "Vec<Vec<f64>>")]
pub struct LorentzMatrix(DMatrix<f64>);

fn metric(n: usize) -> DMatrix<f64> {
    let mut j = DMatrix::identity(n, n);
    j[(0, 0)] = -1.0;
    j
}

impl LorentzMatrix {
    pub fn new(entries: DMatrix<f64>) -> Result<Self> {
        let n = entries.nrows();
        if n < 3 || entries.ncols() != n {
            return Err(Error::DegenerateInput(format!(
                "Lorentz matrix must be square of size at least 3, got {}x{}",
                n,
                entries.ncols()
            )));
        }
        if !entries.iter().all(|c| c.is_finite()) {
            return Err(Error::DegenerateInput("non-finite Lorentz matrix".into()));
        }
        if entries[(0, 0)] <= 0.0 {
            return Err(Error::DegenerateInput(
                "Lorentz matrix is not orthochronous".into(),
            ));
        }
        let defect = group_defect(&entries);
        let scale = entries[(0, 0)] * entries[(0, 0)];
        if defect > FORM_TOL * scale {
            return Err(Error::DegenerateInput(format!(
                "matrix is not in O(d+1,1): max |MᵀJM - J| = {defect:e}"
            )));
        }
        Ok(LorentzMatrix(entries))
    }

    /// Identity acting on `H^{d+1}` (size `d + 2`).
    pub fn identity(d: usize) -> Self {
        LorentzMatrix(DMatrix::identity(d + 2, d + 2))
    }

    /// Embeds an orthogonal `(d+1)x(d+1)` matrix as a time-fixing Lorentz matrix.
    pub fn rotation(r: &DMatrix<f64>) -> Result<Self> {
        let n = r.nrows();
        if r.ncols() != n || n < 2 {
            return Err(Error::DegenerateInput("rotation must be square".into()));
        }
        let defect = (r.transpose() * r - DMatrix::identity(n, n)).amax();
        if defect > FORM_TOL {
            return Err(Error::DegenerateInput(format!(
                "matrix is not orthogonal (defect {defect:e})"
            )));
        }
        let mut m = DMatrix::identity(n + 1, n + 1);
        m.view_mut((1, 1), (n, n)).copy_from(r);
        Ok(LorentzMatrix(m))
    }

    /// Pure boost translating the apex a distance `rapidity` toward the ideal point `direction`.
    pub fn boost(direction: &SpherePoint, rapidity: f64) -> Result<Self> {
        check_rapidity(rapidity)?;
        let u = direction.coords();
        let space = u * rapidity.sinh();
        let x = HyperboloidPoint::new_unchecked(MinkowskiVector::new(
            rapidity.cosh(),
            space.as_slice(),
        ));
        Ok(boost_from_origin(&x))
    }

    pub fn entries(&self) -> &DMatrix<f64> {
        &self.0
    }

    /// Number of homogeneous coordinates `d + 2`.
    pub fn size(&self) -> usize {
        self.0.nrows()
    }

    /// Exact inverse `J Mᵀ J`.
    pub fn inverse(&self) -> Self {
        let j = metric(self.size());
        LorentzMatrix(&j * self.0.transpose() * &j)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &LorentzMatrix) -> Self {
        LorentzMatrix(&self.0 * &other.0)
    }

    /// Largest entry of `|MᵀJM - J|`.
    pub fn defect(&self) -> f64 {
        group_defect(&self.0)
    }

    pub fn apply_vector(&self, v: &MinkowskiVector) -> MinkowskiVector {
        MinkowskiVector::from_coords(&self.0 * v.coords())
    }

    pub fn apply_point(&self, x: &HyperboloidPoint) -> HyperboloidPoint {
        HyperboloidPoint::new_unchecked(self.apply_vector(x.vector()))
    }

    /// Maps a lightlike lift and rescales it to time 1. Returns the rescale factor `(Mℓ)₀`.
    pub fn apply_ideal(&self, l: &IdealVector) -> Result<(IdealVector, f64)> {
        let image = self.apply_vector(l.vector());
        let t = image.time();
        if !(t > LIGHTLIKE_TIME_FLOOR) {
            return Err(Error::NumericalFailure(format!(
                "image of a lightlike vector has time component {t:e}"
            )));
        }
        let sphere = SpherePoint::new_unchecked(image.space() / t);
        Ok((sphere.lift(), t))
    }
}

impl From<LorentzMatrix> for Vec<Vec<f64>> {
    fn from(m: LorentzMatrix) -> Self {
        m.0.row_iter()
            .map(|r| r.iter().copied().collect())
            .collect()
    }
}

impl TryFrom<Vec<Vec<f64>>> for LorentzMatrix {
    type Error = Error;

    fn try_from(rows: Vec<Vec<f64>>) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::DegenerateInput(
                "Lorentz matrix rows must be square".into(),
            ));
        }
        let flat: Vec<f64> = rows.into_iter().flatten().collect();
        LorentzMatrix::new(DMatrix::from_row_slice(n, n, &flat))
    }
}

fn group_defect(m: &DMatrix<f64>) -> f64 {
    let j = metric(m.nrows());
    (m.transpose() * &j * m - &j).amax()
}

fn check_rapidity(r: f64) -> Result<()> {
    if !r.is_finite() || r.abs() > RAPIDITY_CAP {
        return Err(Error::IllConditioned(format!(
            "rapidity {r} exceeds the cap {RAPIDITY_CAP}"
        )));
    }
    Ok(())
}

/// Applies `m` to a hyperboloid point.
pub fn apply_lorentz(m: &LorentzMatrix, x: &HyperboloidPoint) -> HyperboloidPoint {
    m.apply_point(x)
}

/// Pure boost from the apex to `x`: `[[x0, pᵀ], [p, I + p pᵀ/(1+x0)]]`.
///
/// Its columns `1..` form an orthonormal basis of the tangent space at `x`.
pub fn boost_from_origin(x: &HyperboloidPoint) -> LorentzMatrix {
    let v = x.vector();
    let t = v.time();
    let p = v.space();
    let n = v.len();
    let mut m = DMatrix::identity(n, n);
    m[(0, 0)] = t;
    let k = 1.0 / (1.0 + t);
    for i in 0..n - 1 {
        m[(0, i + 1)] = p[i];
        m[(i + 1, 0)] = p[i];
        for j in 0..=i {
            let c = k * (p[i] * p[j]);
            m[(i + 1, j + 1)] += c;
            if i != j {
                m[(j + 1, i + 1)] += c;
            }
        }
    }
    LorentzMatrix(m)
}

/// The pure boost `M` with `Mx = apex`.
pub fn boost_to_origin(x: &HyperboloidPoint) -> Result<LorentzMatrix> {
    if !(x.time() <= RAPIDITY_CAP.cosh()) {
        return Err(Error::IllConditioned(format!(
            "point at distance {} from the apex exceeds the rapidity cap",
            x.rapidity()
        )));
    }
    // the inverse of a pure boost flips the sign of its off-diagonal blocks
    let mut m = boost_from_origin(x).0;
    let n = m.nrows();
    for i in 1..n {
        m[(0, i)] = -m[(0, i)];
        m[(i, 0)] = -m[(i, 0)];
    }
    Ok(LorentzMatrix(m))
}

/// Orthonormal tangent frame at `x`, transported from the apex by the pure boost.
pub fn tangent_basis(x: &HyperboloidPoint) -> Vec<MinkowskiVector> {
    let m = boost_from_origin(x);
    (1..m.size())
        .map(|j| MinkowskiVector::from_coords(m.0.column(j).into_owned()))
        .collect()
}

/// The Möbius transformation of `S^d` induced by `m`.
pub fn induced_moebius(m: &LorentzMatrix, v: &SpherePoint) -> Result<SpherePoint> {
    let (l, _) = m.apply_ideal(&v.lift())?;
    Ok(l.sphere_point())
}

/// Dehomogenizes `m · (1, p)` for a point `p` of the affine chart `x0 = 1`.
pub(crate) fn apply_projective_point(m: &LorentzMatrix, p: &DVector<f64>) -> (DVector<f64>, f64) {
    let mut h = DVector::zeros(p.len() + 1);
    h[0] = 1.0;
    h.rows_mut(1, p.len()).copy_from(p);
    let image = &m.0 * h;
    let t = image[0];
    (image.rows(1, p.len()) / t, t)
}
