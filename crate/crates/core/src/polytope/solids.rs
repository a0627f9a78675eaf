//! Platonic solids scaled so that their midsphere is the unit sphere.

use std::str::FromStr;

use nalgebra::{DVector, Vector3};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{apply_projective, TangentPolytope, INFINITY_TOL};
use crate::error::{Error, Result};
use crate::models::{apply_projective_point, LorentzMatrix};
use crate::sampling::random_lorentz;

/// Seeded perturbations keep every transformed homogeneous time component at
/// least this large, so no vertex lands near the plane at infinity.
pub const HORIZON_MARGIN: f64 = 0.1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SolidKind {
    Tetrahedron,
    Cube,
    Octahedron,
    Dodecahedron,
    Icosahedron,
}

impl SolidKind {
    pub const ALL: [SolidKind; 5] = [
        SolidKind::Tetrahedron,
        SolidKind::Cube,
        SolidKind::Octahedron,
        SolidKind::Dodecahedron,
        SolidKind::Icosahedron,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SolidKind::Tetrahedron => "tetrahedron",
            SolidKind::Cube => "cube",
            SolidKind::Octahedron => "octahedron",
            SolidKind::Dodecahedron => "dodecahedron",
            SolidKind::Icosahedron => "icosahedron",
        }
    }
}

impl FromStr for SolidKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SolidKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::DegenerateInput(format!("unknown solid {s:?}")))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Perturbation {
    None,
    Transform(LorentzMatrix),
    /// Random rotation and boost with rapidity uniform in `[0, max_rapidity]`,
    /// resampled until the polytope stays clear of the plane at infinity.
    Seeded {
        seed: u64,
        max_rapidity: f64,
    },
}

fn midsphere_vertices(kind: SolidKind) -> Vec<Vector3<f64>> {
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    let mut out = Vec::new();
    let signs = [1.0, -1.0];
    match kind {
        SolidKind::Tetrahedron => {
            // edge midpoints of (±1,±1,±1)-even are the unit coordinate vectors
            out = vec![
                Vector3::new(1.0, 1.0, 1.0),
                Vector3::new(1.0, -1.0, -1.0),
                Vector3::new(-1.0, 1.0, -1.0),
                Vector3::new(-1.0, -1.0, 1.0),
            ];
        }
        SolidKind::Cube => {
            let s = 0.5f64.sqrt();
            for x in signs {
                for y in signs {
                    for z in signs {
                        out.push(Vector3::new(x, y, z) * s);
                    }
                }
            }
        }
        SolidKind::Octahedron => {
            let a = 2f64.sqrt();
            for i in 0..3 {
                for s in signs {
                    let mut v = Vector3::zeros();
                    v[i] = s * a;
                    out.push(v);
                }
            }
        }
        SolidKind::Dodecahedron => {
            for x in signs {
                for y in signs {
                    for z in signs {
                        out.push(Vector3::new(x, y, z));
                    }
                }
            }
            for a in signs {
                for b in signs {
                    let (p, q) = (a / phi, b * phi);
                    out.push(Vector3::new(0.0, p, q));
                    out.push(Vector3::new(p, q, 0.0));
                    out.push(Vector3::new(q, 0.0, p));
                }
            }
            for v in &mut out {
                *v /= phi;
            }
        }
        SolidKind::Icosahedron => {
            for a in signs {
                for b in signs {
                    let (p, q) = (a, b * phi);
                    out.push(Vector3::new(0.0, p, q));
                    out.push(Vector3::new(p, q, 0.0));
                    out.push(Vector3::new(q, 0.0, p));
                }
            }
            for v in &mut out {
                *v /= phi;
            }
        }
    }
    out
}

/// Faces of the convex hull of points in convex position, counterclockwise from outside.
fn hull_faces(vertices: &[Vector3<f64>]) -> Vec<Vec<usize>> {
    let n = vertices.len();
    let tol = 1e-9;
    let mut faces: Vec<Vec<usize>> = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                let normal = (vertices[b] - vertices[a]).cross(&(vertices[c] - vertices[a]));
                if normal.norm() < tol {
                    continue;
                }
                let normal = normal.normalize();
                let offset = normal.dot(&vertices[a]);
                let side: Vec<f64> = vertices.iter().map(|v| normal.dot(v) - offset).collect();
                let outward = if side.iter().all(|&s| s <= tol) {
                    normal
                } else if side.iter().all(|&s| s >= -tol) {
                    -normal
                } else {
                    continue;
                };
                let mut members: Vec<usize> = (0..n).filter(|&i| side[i].abs() <= tol).collect();
                members.sort_unstable();
                if faces.iter().any(|f| {
                    let mut g = f.clone();
                    g.sort_unstable();
                    g == members
                }) {
                    continue;
                }
                faces.push(order_counterclockwise(vertices, members, &outward));
            }
        }
    }
    faces
}

fn order_counterclockwise(
    vertices: &[Vector3<f64>],
    mut members: Vec<usize>,
    outward: &Vector3<f64>,
) -> Vec<usize> {
    let centroid =
        members.iter().map(|&i| vertices[i]).sum::<Vector3<f64>>() / members.len() as f64;
    let e1 = (vertices[members[0]] - centroid).normalize();
    let e2 = outward.cross(&e1);
    let angle = |i: usize| {
        let d = vertices[i] - centroid;
        d.dot(&e2).atan2(d.dot(&e1))
    };
    members.sort_by(|&a, &b| angle(a).total_cmp(&angle(b)));
    members
}

/// Minimum homogeneous time component of the vertices after `m`.
fn min_time(m: &LorentzMatrix, vertices: &[Vector3<f64>]) -> f64 {
    vertices
        .iter()
        .map(|v| apply_projective_point(m, &DVector::from_column_slice(v.as_slice())).1)
        .fold(f64::INFINITY, f64::min)
}

/// A midsphere-normalized Platonic solid, optionally moved by a sphere-fixing
/// projective transformation.
pub fn generate_test_polytope(
    kind: SolidKind,
    perturbation: Perturbation,
) -> Result<TangentPolytope> {
    let vertices = midsphere_vertices(kind);
    let faces = hull_faces(&vertices);
    let base = TangentPolytope::new(vertices, faces)?;
    match perturbation {
        Perturbation::None => Ok(base),
        Perturbation::Transform(m) => apply_projective(&m, &base),
        Perturbation::Seeded { seed, max_rapidity } => {
            if !(0.0..=crate::models::RAPIDITY_CAP).contains(&max_rapidity) {
                return Err(Error::DegenerateInput(format!(
                    "rapidity {max_rapidity} must lie in [0, {}]",
                    crate::models::RAPIDITY_CAP
                )));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            loop {
                let m = random_lorentz(&mut rng, 2, max_rapidity);
                if min_time(&m, base.vertices()) >= HORIZON_MARGIN.max(INFINITY_TOL) {
                    return apply_projective(&m, &base);
                }
            }
        }
    }
}
