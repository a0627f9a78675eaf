//! Möbius centering of point sets on spheres.
//!
//! Given `n ≥ 3` distinct points on the unit sphere `S^d`, [`centering::center`]
//! finds the Möbius transformation, unique up to a rotation, that moves their
//! barycenter to the origin. It minimizes the sum of signed distances to
//! horospheres through the points over hyperbolic space `H^{d+1}` and boosts
//! the minimizer to the apex of the hyperboloid.
//!
//! Applied to the points where the edges of an edge-tangent convex polyhedron
//! touch the unit sphere, [`polytope::canonicalize`] yields the canonical
//! representative of its combinatorial type.

// `!(x <= tol)` is used on purpose so that NaN fails every check.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod busemann;
pub mod centering;
pub mod error;
pub mod models;
pub mod pointset;
pub mod polytope;
pub mod sampling;

pub use error::{Error, Result};
