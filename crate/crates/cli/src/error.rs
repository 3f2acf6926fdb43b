use std::fmt;

use dessin_core::Error;
use serde_json::{json, Value};

/// Exit status of the `dessin` binary.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExitCode {
    Ok = 0,
    VerifyFailed = 1,
    Usage = 2,
    BadInput = 3,
    CapExceeded = 4,
    Precondition = 5,
    Io = 6,
    Internal = 70,
}

impl ExitCode {
    pub fn kind(self) -> &'static str {
        match self {
            ExitCode::Ok => "ok",
            ExitCode::VerifyFailed => "verify_failed",
            ExitCode::Usage => "usage",
            ExitCode::BadInput => "bad_input",
            ExitCode::CapExceeded => "cap_exceeded",
            ExitCode::Precondition => "precondition",
            ExitCode::Io => "io",
            ExitCode::Internal => "internal",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliError {
    pub code: ExitCode,
    pub message: String,
}

impl CliError {
    pub fn new(code: ExitCode, message: impl Into<String>) -> Self {
        Self {
            code,
            message: message.into(),
        }
    }

    pub fn usage(message: impl Into<String>) -> Self {
        Self::new(ExitCode::Usage, message)
    }

    pub fn bad_input(message: impl Into<String>) -> Self {
        Self::new(ExitCode::BadInput, message)
    }

    pub fn io(context: &str, e: std::io::Error) -> Self {
        Self::new(ExitCode::Io, format!("{context}: {e}"))
    }

    pub fn to_json(&self) -> Value {
        json!({
            "schema": crate::SCHEMA,
            "error": {
                "kind": self.code.kind(),
                "exit_code": self.code as i32,
                "message": self.message,
            }
        })
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.code.kind(), self.message)
    }
}

impl std::error::Error for CliError {}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::Parse(_)
            | Error::Empty
            | Error::ArcMultiplicity { .. }
            | Error::Disconnected
            | Error::NonPlanar { .. }
            | Error::Orientation(_) => ExitCode::BadInput,
            Error::CapExceeded { .. } => ExitCode::CapExceeded,
            Error::Precondition(_) | Error::MixedParity(_) | Error::NonUnitInverse => {
                ExitCode::Precondition
            }
            Error::Internal(_) => ExitCode::Internal,
        };
        Self::new(code, e.to_string())
    }
}

pub type CliResult<T> = Result<T, CliError>;
