use std::fmt;

/// Anything that stops a command before it can produce a report. Each kind
/// maps onto the documented exit status.
#[derive(Debug)]
pub enum CliError {
    /// Bad flags, unreadable or malformed input files, invalid parameters.
    Usage(String),
    /// A toolkit error from the computation itself.
    Core(polycc::Error),
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        CliError::Usage(message.into())
    }

    /// Exit status: 2 usage/parse, 3 infeasible parameters, 4 invalid
    /// geometry, 5 solver non-convergence or numerical failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Core(error) => match error {
                polycc::Error::Domain(_) => 2,
                polycc::Error::Infeasible(_) => 3,
                polycc::Error::Coincident { .. } => 4,
                polycc::Error::NoConvergence { .. } | polycc::Error::Numerical(_) => 5,
            },
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(message) => write!(f, "{message}"),
            CliError::Core(error) => write!(f, "{error}"),
        }
    }
}

impl From<polycc::Error> for CliError {
    fn from(error: polycc::Error) -> Self {
        CliError::Core(error)
    }
}
