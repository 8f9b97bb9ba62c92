use std::fmt::Display;
use std::path::Path;

use stc_core::Error;

pub const IO: i32 = 1;
pub const PARAMS: i32 = 2;
pub const DISCONNECTED: i32 = 3;
pub const BUDGET: i32 = 4;
pub const INVARIANT: i32 = 5;

#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

pub type CliResult<T = ()> = Result<T, Failure>;

impl Failure {
    pub fn new(code: i32, message: impl Into<String>) -> Failure {
        Failure {
            code,
            message: message.into(),
        }
    }

    pub fn io(path: &Path, err: impl Display) -> Failure {
        Failure::new(IO, format!("{}: {err}", path.display()))
    }

    pub fn context(self, what: &str) -> Failure {
        Failure {
            code: self.code,
            message: format!("{what}: {}", self.message),
        }
    }

    pub fn invariant(name: &str, err: impl Display) -> Failure {
        Failure::new(INVARIANT, format!("invariant {name} violated: {err}"))
    }
}

/// Exit code for a library error.
pub fn code_of(err: &Error) -> i32 {
    match err {
        Error::MalformedHeader(_)
        | Error::MalformedEdge { .. }
        | Error::DuplicateEdge(..)
        | Error::SelfLoop(_)
        | Error::EdgeCountMismatch { .. } => IO,
        Error::DisconnectedInput => DISCONNECTED,
        Error::BudgetExceeded { .. } => BUDGET,
        Error::VerificationFailed(_) | Error::OracleFailure(_) => INVARIANT,
        _ => PARAMS,
    }
}

impl From<Error> for Failure {
    fn from(err: Error) -> Failure {
        Failure::new(code_of(&err), err.to_string())
    }
}
