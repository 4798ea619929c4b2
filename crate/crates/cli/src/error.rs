use thiserror::Error;

/// Failures surfaced by the command-line front-end, each with a fixed exit code.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum CliError {
    #[error("{0}")]
    Precondition(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("{path}: {message}")]
    Io { path: String, message: String },
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Precondition(_) | CliError::Io { .. } => 1,
            CliError::Parse { .. } => 2,
            CliError::Verification(_) => 3,
        }
    }
}

impl From<fillmore_core::Error> for CliError {
    fn from(e: fillmore_core::Error) -> CliError {
        CliError::Precondition(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> CliError {
        // serde_json appends " at line L column C"; keep only the message.
        let full = e.to_string();
        let message = match full.rfind(" at line ") {
            Some(i) => full[..i].to_string(),
            None => full,
        };
        CliError::Parse { line: e.line(), column: e.column(), message }
    }
}
