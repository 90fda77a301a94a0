use std::fmt;

use weyl_lab::Error;

/// Failure of a command, with its process exit code.
#[derive(Debug)]
pub enum CliError {
    /// Bad flags or arguments outside an operation's domain (exit 2).
    Usage(String),
    /// Work budget or memory cap exceeded (exit 3).
    Budget(String),
    /// A file could not be read or written (exit 2).
    Io { path: String, message: String },
}

impl CliError {
    pub fn usage(msg: impl Into<String>) -> Self {
        CliError::Usage(msg.into())
    }

    pub fn io(path: &str, err: impl fmt::Display) -> Self {
        CliError::Io { path: path.to_string(), message: err.to_string() }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Io { .. } => 2,
            CliError::Budget(_) => 3,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::Budget(_) => "budget",
            CliError::Io { .. } => "io",
        }
    }
}

impl fmt::Display for CliError {
    /// One line: `error kind=<kind>: <message>`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let msg = match self {
            CliError::Usage(m) | CliError::Budget(m) => m.clone(),
            CliError::Io { path, message } => format!("{path}: {message}"),
        };
        write!(f, "error kind={}: {}", self.kind(), msg.replace('\n', " "))
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Budget { .. } | Error::MemoryCap(_) => CliError::Budget(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
