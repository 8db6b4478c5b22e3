use thiserror::Error;

/// Errors raised by geometric primitives, validators and transforms.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("invalid polyline: {0}")]
    InvalidPolyline(String),
    #[error("index {index} out of range (len {len})")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("precondition of {check} violated: {message}")]
    Precondition {
        check: &'static str,
        message: String,
        witness: Vec<usize>,
    },
    #[error("undefined detour between vertices {0} and {1}: coincident points")]
    UndefinedDetour(usize, usize),
    #[error("join failed: {0}")]
    Join(String),
    #[error("generation failed after {attempts} attempts (longest prefix {longest} vertices)")]
    GenerationFailed { attempts: usize, longest: usize },
    #[error("loop erasure hit the iteration cap of {0}")]
    IterationCap(usize),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn precondition(check: &'static str, message: impl Into<String>, witness: Vec<usize>) -> Self {
        Error::Precondition {
            check,
            message: message.into(),
            witness,
        }
    }
}
