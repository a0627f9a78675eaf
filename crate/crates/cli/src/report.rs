use std::time::{SystemTime, UNIX_EPOCH};

use horocenter::Error;
use serde::Serialize;
use serde_json::{Map, Value};
use sha2::{Digest, Sha256};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

/// Machine-readable record of one command on one input.
#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub command: &'static str,
    pub input: String,
    pub input_digest: String,
    pub residual: Option<f64>,
    pub iterations: Option<usize>,
    pub transform: Option<Vec<Vec<f64>>>,
    pub diagnostics: Map<String, Value>,
    pub exit_status: i32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timestamp: Option<u64>,
}

impl RunReport {
    pub fn new(command: &'static str, input: String, bytes: &[u8]) -> Self {
        RunReport {
            command,
            input,
            input_digest: digest(bytes),
            residual: None,
            iterations: None,
            transform: None,
            diagnostics: Map::new(),
            exit_status: EXIT_OK,
            error: None,
            timestamp: None,
        }
    }

    pub fn note(&mut self, key: &str, value: impl Serialize) {
        let v = serde_json::to_value(value).expect("diagnostics serialize");
        self.diagnostics.insert(key.to_owned(), v);
    }

    pub fn fail(&mut self, err: &Error) {
        self.exit_status = exit_code(err);
        self.error = Some(err.to_string());
        if let Error::InvalidPolytope(violations) = err {
            self.note("violations", violations);
        }
    }

    pub fn to_json(&self, with_timestamp: bool) -> String {
        let mut report = self.clone();
        if with_timestamp {
            let now = SystemTime::now().duration_since(UNIX_EPOCH);
            report.timestamp = Some(now.map(|d| d.as_secs()).unwrap_or(0));
        }
        let mut out = serde_json::to_string_pretty(&report).expect("reports serialize");
        out.push('\n');
        out
    }
}

pub fn digest(bytes: &[u8]) -> String {
    let hash = Sha256::digest(bytes);
    let hex: String = hash.iter().map(|b| format!("{b:02x}")).collect();
    format!("sha256:{hex}")
}

pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Parse { .. }
        | Error::DegenerateInput(_)
        | Error::InvalidPolytope(_)
        | Error::NotTangent { .. }
        | Error::TangencyOutsideEdge { .. } => EXIT_INVALID,
        Error::IllConditioned(_)
        | Error::NoConvergence { .. }
        | Error::NumericalFailure(_)
        | Error::HitsInfinity { .. } => EXIT_NUMERICAL,
    }
}
