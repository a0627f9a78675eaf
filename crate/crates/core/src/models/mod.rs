//! Minkowski linear algebra and the coordinate models of hyperbolic space.
//!
//! The hyperboloid is where computation happens; the Poincaré ball, Klein and
//! half-space charts are views used for input, output and cross-checks.

mod conversions;
mod hyperboloid;
mod lorentz;
mod minkowski;

pub use conversions::{
    ball_to_halfspace, ball_to_hyperboloid, ball_to_klein, halfspace_to_ball, hyperboloid_to_ball,
    hyperboloid_to_klein, klein_to_ball, klein_to_hyperboloid, BallPoint, HalfSpacePoint,
    KleinPoint, BOUNDARY_GUARD,
};
pub use hyperboloid::{distance, geodesic_point, HyperboloidPoint, FORM_TOL, RAPIDITY_CAP};
pub(crate) use lorentz::apply_projective_point;
pub use lorentz::{
    apply_lorentz, boost_from_origin, boost_to_origin, induced_moebius, tangent_basis,
    LorentzMatrix, LIGHTLIKE_TIME_FLOOR,
};
pub use minkowski::{minkowski_inner, IdealVector, MinkowskiVector, SpherePoint, SPHERE_TOL};
