use std::fmt;
use std::process::ExitCode;

use altpath_core::verify::Check;
use altpath_core::Error;
use serde::Serialize;
use serde_json::Value;

/// What a command produced. Printed to stdout as one JSON document.
#[derive(Debug, Serialize)]
pub struct RunReport {
    pub command: String,
    pub seed: u64,
    pub instance: String,
    pub results: Value,
    pub checks: Vec<Value>,
    pub elapsed_ms: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorReport>,
}

#[derive(Debug, Serialize)]
pub struct ErrorReport {
    pub kind: &'static str,
    pub message: String,
}

impl RunReport {
    pub fn new(command: &str, seed: u64) -> Self {
        RunReport {
            command: command.to_string(),
            seed,
            instance: String::new(),
            results: Value::Null,
            checks: Vec::new(),
            elapsed_ms: 0,
            error: None,
        }
    }

    pub fn push_checks(&mut self, checks: &[Check]) {
        self.checks.extend(checks.iter().map(Check::to_json));
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c["passed"] == Value::Bool(true))
    }
}

/// Failures before any property could be checked.
#[derive(Debug)]
pub enum CliError {
    /// Unreadable or malformed input.
    Input(String),
    /// The input parsed but violates a hypothesis of the computation.
    Precondition(Error),
}

impl CliError {
    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Input(_) => "parse",
            CliError::Precondition(_) => "precondition",
        }
    }

    pub fn exit_code(&self) -> ExitCode {
        match self {
            CliError::Input(_) => ExitCode::from(2),
            CliError::Precondition(_) => ExitCode::from(3),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(msg) => f.write_str(msg),
            CliError::Precondition(e) => write!(f, "{e}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(msg) => CliError::Input(msg),
            other => CliError::Precondition(other),
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
