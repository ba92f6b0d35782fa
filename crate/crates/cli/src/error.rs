use std::fmt;

use kcanon::oracle::OracleError;
use kcanon::signatures::{QuantizeError, SignatureError};
use kcanon::{GraphError, SolverError};
use serde::Serialize;

pub const EXIT_INPUT: i32 = 2;
pub const EXIT_SOLVER: i32 = 3;

/// A failure reported as JSON on stderr with a fixed exit code.
#[derive(Debug, Serialize)]
pub struct CliError {
    pub error: &'static str,
    pub message: String,
    pub exit_code: i32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub file: Option<String>,
}

impl CliError {
    pub fn input(kind: &'static str, message: impl fmt::Display) -> Self {
        Self::new(kind, message, EXIT_INPUT)
    }

    fn new(kind: &'static str, message: impl fmt::Display, exit_code: i32) -> Self {
        CliError {
            error: kind,
            message: message.to_string(),
            exit_code,
            file: None,
        }
    }

    pub fn in_file(mut self, file: impl fmt::Display) -> Self {
        self.file = Some(file.to_string());
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("error serializes")
    }
}

impl From<GraphError> for CliError {
    fn from(e: GraphError) -> Self {
        Self::input(e.kind(), &e)
    }
}

impl From<SolverError> for CliError {
    fn from(e: SolverError) -> Self {
        let code = if e.is_input_error() { EXIT_INPUT } else { EXIT_SOLVER };
        Self::new(e.kind(), &e, code)
    }
}

impl From<SignatureError> for CliError {
    fn from(e: SignatureError) -> Self {
        match e {
            SignatureError::Solver(s) => s.into(),
            SignatureError::Quantize(QuantizeError::NonFinite(_)) => Self::new(e.kind(), &e, EXIT_SOLVER),
            _ => Self::input(e.kind(), &e),
        }
    }
}

impl From<OracleError> for CliError {
    fn from(e: OracleError) -> Self {
        let code = match e {
            OracleError::SingularSystem => EXIT_SOLVER,
            _ => EXIT_INPUT,
        };
        Self::new(e.kind(), &e, code)
    }
}
