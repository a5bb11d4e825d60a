use std::fmt;

/// Failure of a CLI run. Configuration problems exit with 2, everything
/// else with 1.
#[derive(Debug)]
pub enum CliError {
    Config(String),
    Numeric(prodnorm_core::Error),
    Io(std::io::Error),
    Encode(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) => 2,
            _ => 1,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Config(_) => "config",
            CliError::Numeric(e) => e.kind(),
            CliError::Io(_) => "io",
            CliError::Encode(_) => "encode",
        }
    }

    /// One-line JSON document for stderr.
    pub fn to_json(&self) -> String {
        serde_json::json!({
            "error": {
                "kind": self.kind(),
                "message": self.to_string(),
                "exit_code": self.exit_code(),
            }
        })
        .to_string()
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Config(m) => write!(f, "{m}"),
            CliError::Numeric(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "{e}"),
            CliError::Encode(m) => write!(f, "{m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<prodnorm_core::Error> for CliError {
    fn from(e: prodnorm_core::Error) -> Self {
        CliError::Numeric(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Encode(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Encode(e.to_string())
    }
}

pub type CliResult<T> = Result<T, CliError>;
