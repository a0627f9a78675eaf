//! Edge-tangent convex 3-polytopes and their canonical representative.
//!
//! A polytope is edge-tangent when every edge line touches the unit sphere
//! `S² ⊂ R³` at a point of the edge segment. Sphere-fixing projective maps
//! (orthochronous Lorentz matrices acting on `(1, p)`) preserve this property
//! and act on the tangency points as Möbius transformations. The canonical
//! representative is the one whose tangency points have barycenter 0; it is
//! obtained by centering the tangency points and applying the resulting boost
//! to the vertices.

pub mod off;
mod solids;

use std::collections::BTreeMap;

use nalgebra::{DVector, Vector3};
use serde::{Deserialize, Serialize};

use crate::centering::{center, PointConfiguration, SolverConfig};
use crate::error::{Error, Result};
use crate::models::{apply_projective_point, LorentzMatrix, SpherePoint};

pub use solids::{generate_test_polytope, Perturbation, SolidKind, HORIZON_MARGIN};

/// Default tolerance on `|dist(edge line, 0) - 1|`.
pub const DEFAULT_EDGE_TOL: f64 = 1e-8;
/// Tolerance for face planarity and strict convexity.
pub const CONVEXITY_TOL: f64 = 1e-9;
/// Transformed homogeneous time components at or below this are treated as infinite.
pub const INFINITY_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    NotTangent {
        edge: [usize; 2],
        distance: f64,
        violation: f64,
    },
    TangencyOutsideEdge {
        edge: [usize; 2],
        parameter: f64,
    },
    EdgeIncidence {
        edge: [usize; 2],
        faces: usize,
    },
    DegenerateFace {
        face: usize,
        reason: String,
    },
    NonPlanarFace {
        face: usize,
        vertex: usize,
        distance: f64,
    },
    NonConvex {
        face: usize,
        vertex: usize,
        signed_distance: f64,
    },
    InconsistentOrientation {
        face: usize,
    },
}

/// A convex 3-polytope with faces listed counterclockwise as seen from outside.
#[derive(Debug, Clone, PartialEq)]
pub struct TangentPolytope {
    vertices: Vec<Vector3<f64>>,
    faces: Vec<Vec<usize>>,
    edges: Vec<[usize; 2]>,
}

impl TangentPolytope {
    /// Checks the combinatorial structure: index range, face sizes, collinear
    /// corners and two faces per edge. Faces are rotated so that the smallest
    /// vertex index comes first.
    pub fn new(vertices: Vec<Vector3<f64>>, faces: Vec<Vec<usize>>) -> Result<Self> {
        let mut violations = Vec::new();
        if vertices.iter().any(|v| !v.iter().all(|c| c.is_finite())) {
            return Err(Error::DegenerateInput(
                "vertex coordinates must be finite".into(),
            ));
        }
        let faces: Vec<Vec<usize>> = faces.into_iter().map(canonical_rotation).collect();
        let mut incidence: BTreeMap<[usize; 2], usize> = BTreeMap::new();
        for (fi, face) in faces.iter().enumerate() {
            if face.len() < 3 {
                violations.push(Violation::DegenerateFace {
                    face: fi,
                    reason: format!("{} vertices", face.len()),
                });
                continue;
            }
            if let Some(&bad) = face.iter().find(|&&i| i >= vertices.len()) {
                return Err(Error::DegenerateInput(format!(
                    "face {fi} references vertex {bad} of {}",
                    vertices.len()
                )));
            }
            let mut sorted = face.clone();
            sorted.sort_unstable();
            if sorted.windows(2).any(|w| w[0] == w[1]) {
                violations.push(Violation::DegenerateFace {
                    face: fi,
                    reason: "repeated vertex".into(),
                });
                continue;
            }
            let k = face.len();
            for c in 0..k {
                let a = vertices[face[c]];
                let b = vertices[face[(c + 1) % k]];
                let d = vertices[face[(c + 2) % k]];
                let cross = (b - a).cross(&(d - b)).norm();
                let scale = (b - a).norm() * (d - b).norm();
                if cross <= CONVEXITY_TOL * scale {
                    violations.push(Violation::DegenerateFace {
                        face: fi,
                        reason: format!("collinear corner at vertex {}", face[(c + 1) % k]),
                    });
                    break;
                }
            }
            for c in 0..k {
                *incidence
                    .entry(edge_key(face[c], face[(c + 1) % k]))
                    .or_default() += 1;
            }
        }
        for (&edge, &count) in &incidence {
            if count != 2 {
                violations.push(Violation::EdgeIncidence { edge, faces: count });
            }
        }
        if faces.len() < 4 {
            violations.push(Violation::DegenerateFace {
                face: faces.len(),
                reason: "a 3-polytope needs at least 4 faces".into(),
            });
        }
        if !violations.is_empty() {
            return Err(Error::InvalidPolytope(violations));
        }
        Ok(TangentPolytope {
            vertices,
            faces,
            edges: incidence.into_keys().collect(),
        })
    }

    pub fn from_off(text: &str) -> Result<Self> {
        let mesh = off::parse(text)?;
        Self::new(
            mesh.vertices.iter().map(|v| Vector3::from(*v)).collect(),
            mesh.faces,
        )
    }

    pub fn to_off(&self) -> String {
        let mesh = off::OffMesh {
            vertices: self.vertices.iter().map(|v| [v.x, v.y, v.z]).collect(),
            faces: self.faces.clone(),
        };
        off::write(&mesh, self.edges.len())
    }

    pub fn vertices(&self) -> &[Vector3<f64>] {
        &self.vertices
    }

    pub fn faces(&self) -> &[Vec<usize>] {
        &self.faces
    }

    /// Unordered vertex pairs `[i, j]` with `i < j`, sorted.
    pub fn edges(&self) -> &[[usize; 2]] {
        &self.edges
    }

    /// One tangency point per edge, in [`edges`](Self::edges) order.
    pub fn tangency_points(&self, edge_tol: f64) -> Result<Vec<SpherePoint>> {
        self.edges
            .iter()
            .map(|&[i, j]| tangency_point(&self.vertices[i], &self.vertices[j], edge_tol))
            .collect()
    }

    /// Mean of the feet of the perpendiculars from the origin to the edge lines.
    pub fn tangency_barycenter(&self) -> Vector3<f64> {
        let mut sum = Vector3::zeros();
        for &[i, j] in &self.edges {
            sum += edge_foot(&self.vertices[i], &self.vertices[j]).0;
        }
        sum / self.edges.len() as f64
    }

    pub fn edge_lengths(&self) -> Vec<f64> {
        self.edges
            .iter()
            .map(|&[i, j]| (self.vertices[i] - self.vertices[j]).norm())
            .collect()
    }

    pub fn vertex_norms(&self) -> Vec<f64> {
        self.vertices.iter().map(|v| v.norm()).collect()
    }
}

fn edge_key(a: usize, b: usize) -> [usize; 2] {
    if a < b {
        [a, b]
    } else {
        [b, a]
    }
}

fn canonical_rotation(mut face: Vec<usize>) -> Vec<usize> {
    if let Some(pos) = face
        .iter()
        .enumerate()
        .min_by_key(|(_, &v)| v)
        .map(|(i, _)| i)
    {
        face.rotate_left(pos);
    }
    face
}

/// Foot of the perpendicular from the origin to the line `pq` and its line parameter.
fn edge_foot(p: &Vector3<f64>, q: &Vector3<f64>) -> (Vector3<f64>, f64) {
    let dir = q - p;
    let t = -p.dot(&dir) / dir.norm_squared();
    (p + dir * t, t)
}

/// The point where the edge `pq` touches the unit sphere.
pub fn tangency_point(p: &Vector3<f64>, q: &Vector3<f64>, edge_tol: f64) -> Result<SpherePoint> {
    if p == q {
        return Err(Error::DegenerateInput("edge endpoints coincide".into()));
    }
    let (foot, t) = edge_foot(p, q);
    let distance = foot.norm();
    if !((distance - 1.0).abs() <= edge_tol) {
        return Err(Error::NotTangent { distance });
    }
    if !(t > 0.0 && t < 1.0) {
        return Err(Error::TangencyOutsideEdge { parameter: t });
    }
    SpherePoint::normalized(DVector::from_column_slice(foot.as_slice()))
}

/// Outcome of checking the edge-tangency and convexity hypotheses.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub max_tangency_violation: f64,
    pub barycenter_norm: f64,
    pub convex: bool,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Recomputes every tangency point and checks convexity, collecting all violations.
///
/// Faces must be consistently oriented. Counterclockwise-from-outside is
/// expected, but a polytope whose faces are all clockwise (the mirror image of
/// an orientation-reversing map) is accepted as well.
pub fn validate(poly: &TangentPolytope, edge_tol: f64) -> ValidationReport {
    let mut violations = Vec::new();
    let mut max_violation: f64 = 0.0;
    for &[i, j] in &poly.edges {
        let (foot, t) = edge_foot(&poly.vertices[i], &poly.vertices[j]);
        let distance = foot.norm();
        let violation = (distance - 1.0).abs();
        max_violation = max_violation.max(violation);
        if !(violation <= edge_tol) {
            violations.push(Violation::NotTangent {
                edge: [i, j],
                distance,
                violation,
            });
        } else if !(t > 0.0 && t < 1.0) {
            violations.push(Violation::TangencyOutsideEdge {
                edge: [i, j],
                parameter: t,
            });
        }
    }
    let convexity = convexity_violations(poly);
    let convex = convexity.is_empty();
    violations.extend(convexity);
    ValidationReport {
        max_tangency_violation: max_violation,
        barycenter_norm: poly.tangency_barycenter().norm(),
        convex,
        violations,
    }
}

/// Newell normal of a polygon (unnormalized), counterclockwise orientation positive.
fn newell_normal(points: &[Vector3<f64>]) -> Vector3<f64> {
    let mut n = Vector3::zeros();
    for k in 0..points.len() {
        let a = points[k];
        let b = points[(k + 1) % points.len()];
        n += a.cross(&b);
    }
    n
}

fn convexity_violations(poly: &TangentPolytope) -> Vec<Violation> {
    let mut out = Vec::new();
    let scale = poly
        .vertices
        .iter()
        .map(|v| v.norm())
        .fold(1.0_f64, f64::max);
    let tol = CONVEXITY_TOL * scale;
    let mut orientations = Vec::with_capacity(poly.faces.len());
    for (fi, face) in poly.faces.iter().enumerate() {
        let pts: Vec<Vector3<f64>> = face.iter().map(|&i| poly.vertices[i]).collect();
        let normal = newell_normal(&pts);
        let len = normal.norm();
        if !(len > 0.0) {
            out.push(Violation::DegenerateFace {
                face: fi,
                reason: "zero area".into(),
            });
            orientations.push(0);
            continue;
        }
        let normal = normal / len;
        let centroid = pts.iter().sum::<Vector3<f64>>() / pts.len() as f64;
        for &i in face {
            let dist = normal.dot(&(poly.vertices[i] - centroid));
            if dist.abs() > tol {
                out.push(Violation::NonPlanarFace {
                    face: fi,
                    vertex: i,
                    distance: dist,
                });
            }
        }
        let (mut below, mut above) = (Vec::new(), Vec::new());
        for (vi, v) in poly.vertices.iter().enumerate() {
            if face.contains(&vi) {
                continue;
            }
            let s = normal.dot(&(v - centroid));
            if s < -tol {
                below.push(vi);
            } else if s > tol {
                above.push(vi);
            } else {
                out.push(Violation::NonConvex {
                    face: fi,
                    vertex: vi,
                    signed_distance: s,
                });
            }
        }
        // the majority side is the interior; the others break convexity
        let (orientation, wrong_side) = if below.len() >= above.len() {
            (1, above)
        } else {
            (-1, below)
        };
        orientations.push(orientation);
        for vi in wrong_side {
            let s = normal.dot(&(poly.vertices[vi] - centroid));
            out.push(Violation::NonConvex {
                face: fi,
                vertex: vi,
                signed_distance: s,
            });
        }
    }
    let outward = orientations.iter().filter(|&&o| o == 1).count();
    let inward = orientations.iter().filter(|&&o| o == -1).count();
    let expected = if outward >= inward { 1 } else { -1 };
    for (fi, &o) in orientations.iter().enumerate() {
        if o != 0 && o != expected {
            out.push(Violation::InconsistentOrientation { face: fi });
        }
    }
    out
}

/// Applies the sphere-fixing projective map `p ↦ dehomogenize(M (1, p))` to every vertex.
pub fn apply_projective(m: &LorentzMatrix, poly: &TangentPolytope) -> Result<TangentPolytope> {
    if m.size() != 4 {
        return Err(Error::DegenerateInput(format!(
            "polytope transforms need a 4x4 Lorentz matrix, got {0}x{0}",
            m.size()
        )));
    }
    let vertices = poly
        .vertices
        .iter()
        .enumerate()
        .map(|(i, v)| {
            let (image, t) = apply_projective_point(m, &DVector::from_column_slice(v.as_slice()));
            if !(t > INFINITY_TOL) {
                return Err(Error::HitsInfinity { vertex: i });
            }
            Ok(Vector3::new(image[0], image[1], image[2]))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(TangentPolytope {
        vertices,
        faces: poly.faces.clone(),
        edges: poly.edges.clone(),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CanonicalReport {
    pub barycenter_norm_before: f64,
    pub barycenter_norm_after: f64,
    pub transform: LorentzMatrix,
    pub max_tangency_violation: f64,
    pub iterations: usize,
}

/// Moves an edge-tangent polytope to the representative whose tangency points
/// have barycenter 0.
pub fn canonicalize(
    poly: &TangentPolytope,
    solver: &SolverConfig,
    edge_tol: f64,
) -> Result<(TangentPolytope, CanonicalReport)> {
    let check = validate(poly, edge_tol);
    if !check.passed() {
        return Err(Error::InvalidPolytope(check.violations));
    }
    let cfg = PointConfiguration::new(poly.tangency_points(edge_tol)?)?;
    let centering = center(&cfg, solver)?;
    let out = apply_projective(&centering.transform, poly).map_err(|e| match e {
        Error::HitsInfinity { vertex } => Error::NumericalFailure(format!(
            "centering transform sent vertex {vertex} to infinity; the input is not a valid \
             edge-tangent polytope"
        )),
        other => other,
    })?;
    let after = validate(&out, 10.0 * edge_tol);
    if !after.passed() {
        return Err(Error::NumericalFailure(format!(
            "canonical polytope failed revalidation with {} violation(s)",
            after.violations.len()
        )));
    }
    let report = CanonicalReport {
        barycenter_norm_before: check.barycenter_norm,
        barycenter_norm_after: after.barycenter_norm,
        transform: centering.transform,
        max_tangency_violation: after.max_tangency_violation,
        iterations: centering.iterations,
    };
    Ok((out, report))
}
