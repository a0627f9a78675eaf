use std::fs;
use std::path::Path;

use horocenter::centering::{
    center, objective_hessian, CenteringResult, SolverConfig, DEFAULT_SEPARATION,
};
use horocenter::models::{hyperboloid_to_ball, tangent_basis, LorentzMatrix};
use horocenter::pointset::{PointSetFile, UNIT_TOL};
use horocenter::polytope::{
    canonicalize, generate_test_polytope, validate, Perturbation, SolidKind, TangentPolytope,
};
use horocenter::Error;
use nalgebra::DVector;
use serde::Serialize;

use crate::report::{RunReport, EXIT_INVALID, EXIT_OK, EXIT_VERIFY};

/// Largest tangency barycenter norm accepted for a canonical polytope.
pub const BARYCENTER_TOL: f64 = 1e-8;

#[derive(Debug, Clone)]
pub enum Job {
    Center {
        solver: SolverConfig,
        renormalize: bool,
    },
    Canonicalize {
        solver: SolverConfig,
        edge_tol: f64,
    },
    Verify {
        grad_tol: f64,
        edge_tol: f64,
    },
}

/// What a job produced for one input.
pub struct Outcome {
    pub report: RunReport,
    /// Primary output: centered points, canonical OFF, or (for verify) nothing.
    pub output: Option<String>,
    /// Progress lines for `--verbose`.
    pub log: Vec<String>,
}

impl Job {
    pub fn name(&self) -> &'static str {
        match self {
            Job::Center { .. } => "center",
            Job::Canonicalize { .. } => "canonicalize",
            Job::Verify { .. } => "verify",
        }
    }

    /// Whether a directory entry with this extension is an input for the job.
    pub fn accepts(&self, ext: &str) -> bool {
        match self {
            Job::Center { .. } => ext == "json",
            Job::Canonicalize { .. } => ext == "off",
            Job::Verify { .. } => ext == "json" || ext == "off",
        }
    }

    pub fn run(&self, name: &str, bytes: &[u8]) -> Outcome {
        let mut out = Outcome {
            report: RunReport::new(self.name(), name.to_owned(), bytes),
            output: None,
            log: Vec::new(),
        };
        let text = match std::str::from_utf8(bytes) {
            Ok(t) => t,
            Err(e) => {
                out.report
                    .fail(&Error::DegenerateInput(format!("input is not UTF-8: {e}")));
                return out;
            }
        };
        let result = match self {
            Job::Center {
                solver,
                renormalize,
            } => run_center(text, solver, *renormalize, &mut out),
            Job::Canonicalize { solver, edge_tol } => {
                run_canonicalize(text, solver, *edge_tol, &mut out)
            }
            Job::Verify { grad_tol, edge_tol } => {
                let ext = Path::new(name)
                    .extension()
                    .and_then(|e| e.to_str())
                    .unwrap_or("");
                match ext {
                    "off" => verify_off(text, *edge_tol, &mut out.report),
                    "json" => verify_points(text, *grad_tol, &mut out.report),
                    _ => Err(Error::DegenerateInput(format!(
                        "cannot tell the format of {name:?}; expected a .json or .off extension"
                    ))),
                }
            }
        };
        if let Err(e) = result {
            out.report.fail(&e);
            out.output = None;
        }
        out
    }
}

fn rows(m: &LorentzMatrix) -> Vec<Vec<f64>> {
    let e = m.entries();
    (0..e.nrows())
        .map(|i| e.row(i).iter().copied().collect())
        .collect()
}

fn log_history(res: &CenteringResult, log: &mut Vec<String>) {
    for (k, f) in res.objective_history.iter().enumerate() {
        log.push(format!("iteration {k}: F - F(apex) = {f:.17e}"));
    }
    log.push(format!(
        "converged after {} iterations, residual {:e}",
        res.iterations, res.residual
    ));
}

fn run_center(
    text: &str,
    solver: &SolverConfig,
    renormalize: bool,
    out: &mut Outcome,
) -> horocenter::Result<()> {
    let file = PointSetFile::parse(text)?;
    let cfg = file.configuration(renormalize, DEFAULT_SEPARATION)?;
    out.report.note("points", cfg.len());
    out.report.note("dim", cfg.dim());
    let res = center(&cfg, solver)?;
    log_history(&res, &mut out.log);
    let hessian = objective_hessian(&cfg, &res.minimizer).matrix(&tangent_basis(&res.minimizer));
    out.report.residual = Some(res.residual);
    out.report.iterations = Some(res.iterations);
    out.report.transform = Some(rows(&res.transform));
    out.report.note(
        "minimizer_ball",
        hyperboloid_to_ball(&res.minimizer).coords().as_slice(),
    );
    out.report.note(
        "smallest_hessian_eigenvalue",
        hessian.symmetric_eigen().eigenvalues.min(),
    );
    out.report.note("objective_history", &res.objective_history);
    let mut json = PointSetFile::from_points(cfg.dim(), &res.centered_points).to_json();
    json.push('\n');
    out.output = Some(json);
    Ok(())
}

fn run_canonicalize(
    text: &str,
    solver: &SolverConfig,
    edge_tol: f64,
    out: &mut Outcome,
) -> horocenter::Result<()> {
    let poly = TangentPolytope::from_off(text)?;
    out.report.note("vertices", poly.vertices().len());
    out.report.note("edges", poly.edges().len());
    out.report.note("faces", poly.faces().len());
    let (canonical, info) = canonicalize(&poly, solver, edge_tol)?;
    out.log.push(format!(
        "centered {} tangency points in {} iterations",
        poly.edges().len(),
        info.iterations
    ));
    out.report.iterations = Some(info.iterations);
    out.report.transform = Some(rows(&info.transform));
    out.report.residual = Some(info.barycenter_norm_after);
    out.report
        .note("barycenter_norm_before", info.barycenter_norm_before);
    out.report
        .note("barycenter_norm_after", info.barycenter_norm_after);
    out.report
        .note("max_tangency_violation", info.max_tangency_violation);
    // the output must pass `verify` at the same tolerances
    let check = validate(&canonical, edge_tol);
    if !check.passed() || info.barycenter_norm_after > BARYCENTER_TOL {
        return Err(Error::NumericalFailure(format!(
            "canonical polytope misses the output tolerances (barycenter {:e}, {} violation(s))",
            info.barycenter_norm_after,
            check.violations.len()
        )));
    }
    out.output = Some(canonical.to_off());
    Ok(())
}

#[derive(Serialize)]
struct Check {
    check: &'static str,
    passed: bool,
    value: f64,
    tolerance: f64,
}

fn record_checks(report: &mut RunReport, checks: Vec<Check>) {
    if checks.iter().any(|c| !c.passed) {
        report.exit_status = EXIT_VERIFY;
        let failed: Vec<&str> = checks
            .iter()
            .filter(|c| !c.passed)
            .map(|c| c.check)
            .collect();
        report.error = Some(format!("verification failed: {}", failed.join(", ")));
    }
    report.note("checks", checks);
}

fn verify_points(text: &str, grad_tol: f64, report: &mut RunReport) -> horocenter::Result<()> {
    let file = PointSetFile::parse(text)?;
    let n = file.points.len();
    let rows: Vec<DVector<f64>> = file
        .points
        .iter()
        .map(|r| DVector::from_column_slice(r))
        .collect();
    let unit = rows
        .iter()
        .map(|r| (r.norm() - 1.0).abs())
        .fold(0.0, f64::max);
    let mut separation = f64::INFINITY;
    for i in 0..n {
        for j in 0..i {
            separation = separation.min((&rows[i] - &rows[j]).norm());
        }
    }
    let mut sum = DVector::zeros(file.dim + 1);
    for r in &rows {
        if r.norm() > 0.0 {
            sum += r / r.norm();
        }
    }
    let barycenter = sum.norm();
    let bary_tol = 10.0 * n as f64 * grad_tol;
    report.residual = Some(barycenter);
    report.note("points", n);
    report.note("dim", file.dim);
    record_checks(
        report,
        vec![
            Check {
                check: "point_count",
                passed: n >= 3,
                value: n as f64,
                tolerance: 3.0,
            },
            Check {
                check: "unit_norm",
                passed: unit <= UNIT_TOL,
                value: unit,
                tolerance: UNIT_TOL,
            },
            Check {
                check: "distinct",
                passed: separation > DEFAULT_SEPARATION,
                value: separation,
                tolerance: DEFAULT_SEPARATION,
            },
            Check {
                check: "barycenter",
                passed: barycenter <= bary_tol,
                value: barycenter,
                tolerance: bary_tol,
            },
        ],
    );
    Ok(())
}

fn verify_off(text: &str, edge_tol: f64, report: &mut RunReport) -> horocenter::Result<()> {
    let poly = TangentPolytope::from_off(text)?;
    let v = validate(&poly, edge_tol);
    report.residual = Some(v.barycenter_norm);
    report.note("vertices", poly.vertices().len());
    report.note("edges", poly.edges().len());
    report.note("faces", poly.faces().len());
    report.note("violations", &v.violations);
    record_checks(
        report,
        vec![
            Check {
                check: "tangency",
                passed: v.max_tangency_violation <= edge_tol,
                value: v.max_tangency_violation,
                tolerance: edge_tol,
            },
            Check {
                check: "structure",
                passed: v.passed(),
                value: v.violations.len() as f64,
                tolerance: 0.0,
            },
            Check {
                check: "barycenter",
                passed: v.barycenter_norm <= BARYCENTER_TOL,
                value: v.barycenter_norm,
                tolerance: BARYCENTER_TOL,
            },
        ],
    );
    Ok(())
}

pub fn gen(kind: SolidKind, seed: Option<u64>, rapidity: f64, output: Option<&Path>) -> i32 {
    let perturbation = match seed {
        Some(seed) => Perturbation::Seeded {
            seed,
            max_rapidity: rapidity,
        },
        None => Perturbation::None,
    };
    let poly = match generate_test_polytope(kind, perturbation) {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            return crate::report::exit_code(&e);
        }
    };
    let text = poly.to_off();
    match output {
        Some(path) => match fs::write(path, text) {
            Ok(()) => EXIT_OK,
            Err(e) => {
                eprintln!("error: cannot write {}: {e}", path.display());
                EXIT_INVALID
            }
        },
        None => {
            print!("{text}");
            EXIT_OK
        }
    }
}
