use std::fmt;
use std::process::ExitCode;

/// Process exit status: 0 success, 1 certified negative, 2 usage or input
/// error, 3 budget or precondition refusal.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok = 0,
    Negative = 1,
    Usage = 2,
    Refused = 3,
}

impl From<Status> for ExitCode {
    fn from(s: Status) -> Self {
        ExitCode::from(s as u8)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliError {
    pub status: Status,
    pub message: String,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        CliError { status: Status::Usage, message: message.into() }
    }

    pub fn negative(message: impl Into<String>) -> Self {
        CliError { status: Status::Negative, message: message.into() }
    }

    pub fn refused(message: impl Into<String>) -> Self {
        CliError { status: Status::Refused, message: message.into() }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for CliError {}
