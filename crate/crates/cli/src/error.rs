use std::fmt;
use std::process::ExitCode;

use partition_shelling::labeling::LabelError;
use partition_shelling::{PosetError, SphereError, VecPartError};

/// A failed run, classified by exit status.
#[derive(Debug)]
pub enum CliError {
    /// Exit 1: a verification found a counterexample.
    Verification(String),
    /// Exit 2: two oracles disagree.
    Mismatch(String),
    /// Exit 3: a resource budget would be exceeded.
    Budget(String),
    /// Exit 4: invalid arguments or input.
    BadInput(String),
    Io(std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> ExitCode {
        ExitCode::from(match self {
            CliError::Verification(_) => 1,
            CliError::Mismatch(_) => 2,
            CliError::Budget(_) => 3,
            CliError::BadInput(_) | CliError::Io(_) => 4,
        })
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Verification(m) => write!(f, "verification failed: {m}"),
            CliError::Mismatch(m) => write!(f, "mismatch: {m}"),
            CliError::Budget(m) => write!(f, "budget exceeded: {m}"),
            CliError::BadInput(m) => write!(f, "bad input: {m}"),
            CliError::Io(e) => write!(f, "i/o error: {e}"),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

impl From<PosetError> for CliError {
    fn from(e: PosetError) -> Self {
        match e {
            PosetError::ResourceLimit { .. } => CliError::Budget(e.to_string()),
            _ => CliError::BadInput(e.to_string()),
        }
    }
}

impl From<VecPartError> for CliError {
    fn from(e: VecPartError) -> Self {
        match e {
            VecPartError::ResourceLimit { .. } => CliError::Budget(e.to_string()),
            _ => CliError::BadInput(e.to_string()),
        }
    }
}

impl From<LabelError> for CliError {
    fn from(e: LabelError) -> Self {
        match e {
            LabelError::Poset(p) => p.into(),
            LabelError::VecPart(v) => v.into(),
            _ => CliError::BadInput(e.to_string()),
        }
    }
}

impl From<SphereError> for CliError {
    fn from(e: SphereError) -> Self {
        if e.is_resource_limit() {
            return CliError::Budget(e.to_string());
        }
        match e {
            SphereError::Mismatch(m) => CliError::Mismatch(m),
            SphereError::Poset(p) => p.into(),
            SphereError::VecPart(v) => v.into(),
            SphereError::Label(l) => l.into(),
            _ => CliError::BadInput(e.to_string()),
        }
    }
}
