//! The point of minimal distance sum and the centering Möbius transformation.
//!
//! For ideal points `v_1, ..., v_n` the objective is
//! `F(x) = Σ_j δ_j(x) = Σ_j log(-<x, (1, v_j)>)`, using the horospheres through
//! the apex. `F` is strictly geodesically convex and proper for `n ≥ 3`
//! distinct points, so it has a unique minimizer `x*`. The pure boost `T`
//! with `T x* = apex` satisfies `Σ_j T v_j = 0`, because the Riemannian
//! gradient of `F` at the apex is `(0, -Σ_j v_j)`.
//!
//! The minimizer is found by a Riemannian Newton iteration. At each iterate
//! the points are mapped by the boost to the apex, where the gradient and
//! Hessian have the closed forms `-Σ w_j` and `n I - Σ w_j w_jᵀ` in terms of
//! the boosted points `w_j`. Steps follow the exponential map and are
//! safeguarded by Armijo backtracking, with a fall-back to steepest descent.

use nalgebra::{DMatrix, DVector};

use crate::busemann::{horo_pairing, TangentForm};
use crate::error::{Error, Result};
use crate::models::{
    boost_to_origin, induced_moebius, HyperboloidPoint, LorentzMatrix, MinkowskiVector,
    SpherePoint, LIGHTLIKE_TIME_FLOOR, RAPIDITY_CAP,
};

/// Default minimum chordal distance between two input points.
pub const DEFAULT_SEPARATION: f64 = 1e-9;

/// Largest geodesic step length tried by the line search.
const MAX_STEP: f64 = 8.0;
const MAX_BACKTRACKS: usize = 80;

/// `n ≥ 3` pairwise distinct points of `S^d`.
#[derive(Debug, Clone, PartialEq)]
pub struct PointConfiguration {
    dim: usize,
    points: Vec<SpherePoint>,
}

impl PointConfiguration {
    pub fn new(points: Vec<SpherePoint>) -> Result<Self> {
        Self::with_separation(points, DEFAULT_SEPARATION)
    }

    pub fn with_separation(points: Vec<SpherePoint>, min_separation: f64) -> Result<Self> {
        if points.len() < 3 {
            return Err(Error::DegenerateInput(format!(
                "need at least n >= 3 distinct points, got {}",
                points.len()
            )));
        }
        let ambient = points[0].ambient_dim();
        if ambient < 2 {
            return Err(Error::DegenerateInput(
                "points must lie on a sphere of dimension d >= 1".into(),
            ));
        }
        if let Some(i) = points.iter().position(|p| p.ambient_dim() != ambient) {
            return Err(Error::DegenerateInput(format!(
                "point {i} has {} coordinates, expected {ambient}",
                points[i].ambient_dim()
            )));
        }
        if let Some((i, j, dist)) = closest_pair_below(&points, min_separation) {
            return Err(Error::DegenerateInput(format!(
                "points {i} and {j} are not distinct (chordal distance {dist:e})"
            )));
        }
        Ok(PointConfiguration {
            dim: ambient - 1,
            points,
        })
    }

    /// Sphere dimension `d`.
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[SpherePoint] {
        &self.points
    }

    /// Applies a Möbius transformation to every point.
    pub fn transformed(&self, m: &LorentzMatrix) -> Result<Self> {
        let points = self
            .points
            .iter()
            .map(|v| induced_moebius(m, v))
            .collect::<Result<Vec<_>>>()?;
        Ok(PointConfiguration {
            dim: self.dim,
            points,
        })
    }
}

fn closest_pair_below(points: &[SpherePoint], tol: f64) -> Option<(usize, usize, f64)> {
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            let dist = points[i].chordal_distance(&points[j]);
            if dist < tol {
                return Some((i, j, dist));
            }
        }
    }
    None
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolverConfig {
    pub grad_tol: f64,
    pub max_iters: usize,
    pub armijo_slope: f64,
    pub backtrack_factor: f64,
    pub rapidity_cap: f64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            grad_tol: 1e-12,
            max_iters: 100,
            armijo_slope: 1e-4,
            backtrack_factor: 0.5,
            rapidity_cap: RAPIDITY_CAP,
        }
    }
}

impl SolverConfig {
    pub fn validate(&self) -> Result<()> {
        let positive = [self.grad_tol, self.armijo_slope, self.rapidity_cap]
            .iter()
            .all(|v| v.is_finite() && *v > 0.0);
        if !positive || self.max_iters == 0 {
            return Err(Error::DegenerateInput(
                "solver tolerances and iteration limit must be positive".into(),
            ));
        }
        if !(self.backtrack_factor > 0.0 && self.backtrack_factor < 1.0) {
            return Err(Error::DegenerateInput(
                "backtrack factor must lie in (0, 1)".into(),
            ));
        }
        if self.rapidity_cap > RAPIDITY_CAP {
            return Err(Error::DegenerateInput(format!(
                "rapidity cap may not exceed {RAPIDITY_CAP}"
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CenteringResult {
    /// The point of minimal distance sum.
    pub minimizer: HyperboloidPoint,
    /// Pure boost sending the minimizer to the apex.
    pub transform: LorentzMatrix,
    pub centered_points: Vec<SpherePoint>,
    /// `‖Σ_j T v_j‖`.
    pub residual: f64,
    pub iterations: usize,
    pub objective_history: Vec<f64>,
}

/// `Σ_j log(-<x, (1, v_j)>)`.
pub fn objective(cfg: &PointConfiguration, x: &HyperboloidPoint) -> f64 {
    cfg.points
        .iter()
        .map(|v| horo_pairing(x.vector(), v).ln())
        .sum()
}

/// Riemannian gradient `n x + Σ_j ℓ_j / <x, ℓ_j>`.
pub fn objective_gradient(cfg: &PointConfiguration, x: &HyperboloidPoint) -> MinkowskiVector {
    let xv = x.vector();
    let mut acc = xv.coords() * cfg.len() as f64;
    for v in &cfg.points {
        let inv = -1.0 / horo_pairing(xv, v);
        acc[0] += inv;
        for (a, c) in acc.iter_mut().skip(1).zip(v.coords().iter()) {
            *a += inv * c;
        }
    }
    MinkowskiVector::from_coords(acc)
}

/// Riemannian Hessian `n·metric - Σ_j dδ_j ⊗ dδ_j`.
pub fn objective_hessian(cfg: &PointConfiguration, x: &HyperboloidPoint) -> TangentForm {
    let h = |v: &SpherePoint| crate::busemann::Horosphere::through_origin(v.clone());
    TangentForm {
        metric_weight: cfg.len() as f64,
        rank_one: cfg
            .points
            .iter()
            .map(|v| crate::busemann::grad_delta(&h(v), x))
            .collect(),
    }
}

/// Image of `v` under the Möbius map induced by `boost_to_origin(x)`.
///
/// Written so that no step cancels when `x` is far from the apex and `v` is
/// close to the direction of `x`.
fn moebius_to_origin(x: &HyperboloidPoint, v: &SpherePoint) -> Result<SpherePoint> {
    let space = x.vector().space();
    let rho = space.norm();
    if rho == 0.0 {
        return Ok(v.clone());
    }
    let x0 = x.time();
    let u = space / rho;
    // a = -<x, (1, v)>, and rho / (1 + x0) = 1 - e
    let a = horo_pairing(x.vector(), v);
    let e = (1.0 + 1.0 / (x0 + rho)) / (1.0 + x0);
    let image = (v.coords() - &u) - &u * (a - e - e * a);
    if !(a > LIGHTLIKE_TIME_FLOOR) || !image.iter().all(|c| c.is_finite()) {
        return Err(Error::NumericalFailure(format!(
            "ideal point collapsed under the boost (time factor {a:e})"
        )));
    }
    SpherePoint::normalized(image / a)
}

/// The boosted view of the configuration at an iterate.
struct LocalFrame {
    boost: LorentzMatrix,
    points: Vec<SpherePoint>,
    /// Gradient coordinates `-Σ w_j` in the transported tangent basis.
    gradient: DVector<f64>,
}

impl LocalFrame {
    fn at(cfg: &PointConfiguration, x: &HyperboloidPoint, cap: f64) -> Result<Self> {
        if x.rapidity() > cap {
            return Err(ill_conditioned(x, cap));
        }
        let boost = boost_to_origin(x)?;
        let points = cfg
            .points
            .iter()
            .map(|v| moebius_to_origin(x, v))
            .collect::<Result<Vec<_>>>()?;
        let mut sum = DVector::zeros(cfg.dim + 1);
        for w in &points {
            sum += w.coords();
        }
        Ok(LocalFrame {
            boost,
            points,
            gradient: -sum,
        })
    }

    fn hessian(&self) -> DMatrix<f64> {
        let k = self.gradient.len();
        let mut h = DMatrix::identity(k, k) * self.points.len() as f64;
        for w in &self.points {
            h.ger(-1.0, w.coords(), w.coords(), 1.0);
        }
        h
    }

    /// `F(exp(step)) - F(x)`, evaluated from the boosted points.
    fn decrease(&self, step: &DVector<f64>) -> f64 {
        let r = step.norm();
        if r == 0.0 {
            return 0.0;
        }
        let u = step / r;
        let (em1, sh) = ((-r).exp_m1(), r.sinh());
        self.points
            .iter()
            .map(|w| {
                let gap = (&u - w.coords()).norm_squared();
                (em1 + 0.5 * sh * gap).ln_1p()
            })
            .sum()
    }

    /// `T⁻¹ exp_apex(step)`.
    fn advance(&self, step: &DVector<f64>) -> HyperboloidPoint {
        let r = step.norm();
        let mut y = DVector::zeros(step.len() + 1);
        y[0] = r.cosh();
        if r > 0.0 {
            y.rows_mut(1, step.len())
                .copy_from(&(step * (r.sinh() / r)));
        }
        let image = self
            .boost
            .inverse()
            .apply_vector(&MinkowskiVector::from_coords(y));
        HyperboloidPoint::reprojected(&image)
    }
}

fn ill_conditioned(x: &HyperboloidPoint, cap: f64) -> Error {
    Error::IllConditioned(format!(
        "minimizer estimate at distance {:.3} from the apex exceeds the rapidity cap {cap}; \
         points are too clustered",
        x.rapidity()
    ))
}

struct Solution {
    minimizer: HyperboloidPoint,
    frame: LocalFrame,
    iterations: usize,
    history: Vec<f64>,
}

fn solve(cfg: &PointConfiguration, solver: &SolverConfig) -> Result<Solution> {
    solver.validate()?;
    let n = cfg.len() as f64;
    let tol = solver.grad_tol * n;
    let mut x = HyperboloidPoint::apex(cfg.dim);
    let mut value = 0.0;
    let mut history = vec![value];
    let mut iterations = 0;
    loop {
        let frame = LocalFrame::at(cfg, &x, solver.rapidity_cap)?;
        let grad_norm = frame.gradient.norm();
        if grad_norm <= tol {
            return Ok(Solution {
                minimizer: x,
                frame,
                iterations,
                history,
            });
        }
        if iterations >= solver.max_iters {
            return Err(Error::NoConvergence {
                iterations,
                grad_norm,
            });
        }

        let newton = frame
            .hessian()
            .cholesky()
            .map(|c| -c.solve(&frame.gradient))
            .filter(|d| d.iter().all(|c| c.is_finite()) && d.dot(&frame.gradient) < 0.0);
        let accepted = newton
            .as_ref()
            .and_then(|d| line_search(&frame, d, solver))
            .or_else(|| line_search(&frame, &-&frame.gradient, solver));
        let (step, change) = match accepted {
            Some(found) => found,
            // Near the minimizer the decrease drops below rounding; take the
            // Newton step when it shrinks the gradient.
            None => match newton.filter(|d| d.norm() <= MAX_STEP) {
                Some(d) => {
                    let next = LocalFrame::at(cfg, &frame.advance(&d), solver.rapidity_cap)?;
                    if next.gradient.norm() >= grad_norm {
                        return Err(Error::NoConvergence {
                            iterations,
                            grad_norm,
                        });
                    }
                    let change = frame.decrease(&d).min(0.0);
                    (d, change)
                }
                None => {
                    return Err(Error::NoConvergence {
                        iterations,
                        grad_norm,
                    })
                }
            },
        };

        x = frame.advance(&step);
        value += change;
        history.push(value);
        iterations += 1;
    }
}

/// Armijo backtracking along `direction`; returns the accepted step and the objective change.
fn line_search(
    frame: &LocalFrame,
    direction: &DVector<f64>,
    solver: &SolverConfig,
) -> Option<(DVector<f64>, f64)> {
    let slope = frame.gradient.dot(direction);
    if !(slope < 0.0) {
        return None;
    }
    let len = direction.norm();
    let mut t = if len > MAX_STEP { MAX_STEP / len } else { 1.0 };
    for _ in 0..MAX_BACKTRACKS {
        let step = direction * t;
        let change = frame.decrease(&step);
        if change.is_finite() && change < 0.0 && change <= solver.armijo_slope * t * slope {
            return Some((step, change));
        }
        t *= solver.backtrack_factor;
    }
    None
}

/// The point of minimal distance sum from the configuration's ideal points.
pub fn find_min_distance_point(
    cfg: &PointConfiguration,
    solver: &SolverConfig,
) -> Result<HyperboloidPoint> {
    solve(cfg, solver).map(|s| s.minimizer)
}

/// Computes the pure boost `T` with `Σ_j T v_j = 0`.
pub fn center(cfg: &PointConfiguration, solver: &SolverConfig) -> Result<CenteringResult> {
    let sol = solve(cfg, solver)?;
    Ok(CenteringResult {
        minimizer: sol.minimizer,
        residual: sol.frame.gradient.norm(),
        transform: sol.frame.boost,
        centered_points: sol.frame.points,
        iterations: sol.iterations,
        objective_history: sol.history,
    })
}

/// Largest entry of the difference of the Gram matrices of the two centered point sets.
///
/// Two centerings of the same configuration differ by an orthogonal map, which
/// leaves the Gram matrix unchanged.
pub fn verify_uniqueness(a: &CenteringResult, b: &CenteringResult) -> Result<f64> {
    gram_discrepancy(&a.centered_points, &b.centered_points)
}

pub fn gram_discrepancy(a: &[SpherePoint], b: &[SpherePoint]) -> Result<f64> {
    if a.len() != b.len() {
        return Err(Error::DegenerateInput(format!(
            "cannot compare centerings of {} and {} points",
            a.len(),
            b.len()
        )));
    }
    let mut worst: f64 = 0.0;
    for i in 0..a.len() {
        for j in i..a.len() {
            let ga = a[i].coords().dot(a[j].coords());
            let gb = b[i].coords().dot(b[j].coords());
            worst = worst.max((ga - gb).abs());
        }
    }
    Ok(worst)
}
