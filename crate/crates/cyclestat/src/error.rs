use thiserror::Error;

/// Failure of a command, classified by process exit code.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("budget exceeded: {0}")]
    Budget(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Precondition(_) => 2,
            CliError::Budget(_) => 3,
            CliError::Invariant(_) => 4,
            CliError::Io(_) | CliError::Json(_) | CliError::Csv(_) => 1,
        }
    }
}

impl From<cyclestat_core::Error> for CliError {
    fn from(e: cyclestat_core::Error) -> Self {
        use cyclestat_core::Error as E;
        match e {
            E::Budget { .. } => CliError::Budget(format!("{e}; raise --budget or pass --no-budget")),
            E::Invariant(_) => CliError::Invariant(e.to_string()),
            _ => CliError::Precondition(e.to_string()),
        }
    }
}
