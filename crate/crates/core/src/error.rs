use alloc::string::String;
use core::fmt;

/// Everything that can go wrong inside the core algorithms.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A documented precondition of the operation does not hold.
    Precondition(String),
    /// Input exceeds an enumeration or bitset cap.
    Capacity {
        what: &'static str,
        limit: usize,
        got: usize,
    },
    /// Malformed input (negative weights, out-of-range elements, ...).
    InvalidInput(String),
    /// No feasible solution exists, or a produced solution left the family.
    Infeasible(String),
    /// An internal guarantee was observed not to hold.
    InvariantViolation(String),
    /// CE-Rounding hit its iteration cap before covering the target.
    CoverageStalled { iterations: usize },
    /// The requested combination is outside what this crate ships.
    Unsupported(String),
}

impl Error {
    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub(crate) fn infeasible(msg: impl Into<String>) -> Self {
        Error::Infeasible(msg.into())
    }

    pub(crate) fn invariant(msg: impl Into<String>) -> Self {
        Error::InvariantViolation(msg.into())
    }

    pub(crate) fn unsupported(msg: impl Into<String>) -> Self {
        Error::Unsupported(msg.into())
    }

    pub(crate) fn capacity(what: &'static str, limit: usize, got: usize) -> Self {
        Error::Capacity { what, limit, got }
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Precondition(m) => write!(f, "precondition failed: {m}"),
            Error::Capacity { what, limit, got } => {
                write!(f, "capacity exceeded: {what} is {got}, limit {limit}")
            }
            Error::InvalidInput(m) => write!(f, "invalid input: {m}"),
            Error::Infeasible(m) => write!(f, "infeasible: {m}"),
            Error::InvariantViolation(m) => write!(f, "invariant violation: {m}"),
            Error::CoverageStalled { iterations } => {
                write!(f, "coverage stalled after {iterations} iterations")
            }
            Error::Unsupported(m) => write!(f, "unsupported: {m}"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
