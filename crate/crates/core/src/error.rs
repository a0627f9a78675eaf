use thiserror::Error;

use crate::polytope::Violation;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("degenerate input: {0}")]
    DegenerateInput(String),

    #[error("ill-conditioned: {0}")]
    IllConditioned(String),

    #[error("numerical failure: {0}")]
    NumericalFailure(String),

    #[error("no convergence after {iterations} iterations (gradient norm {grad_norm:e})")]
    NoConvergence { iterations: usize, grad_norm: f64 },

    #[error("edge line is not tangent to the unit sphere (distance {distance})")]
    NotTangent { distance: f64 },

    #[error("tangency point lies outside the edge segment (parameter {parameter})")]
    TangencyOutsideEdge { parameter: f64 },

    #[error("transform sends vertex {vertex} to the plane at infinity")]
    HitsInfinity { vertex: usize },

    #[error("invalid polytope: {} violation(s)", .0.len())]
    InvalidPolytope(Vec<Violation>),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
