use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("degenerate digit vector: base {base}, weight {weight} (need base >= 3 and 2 <= weight <= base - 1)")]
    DegenerateVector { base: usize, weight: usize },

    #[error("bit sequence has length {actual}, expected {expected}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("index {index} out of range 0..={max}")]
    IndexOutOfRange { index: usize, max: usize },

    #[error("invalid cumulative digit function: {0}")]
    InvalidCumulative(String),

    #[error("resource limit exceeded: {what} needs {needed} entries, cap is {cap}")]
    ResourceLimit {
        what: &'static str,
        needed: u128,
        cap: usize,
    },

    #[error("value out of range: {0}")]
    OutOfRange(String),

    #[error("invalid data: {0}")]
    InvalidData(String),

    #[error("insufficient precision: {0}")]
    InsufficientPrecision(String),

    #[error("insufficient stream prefix: {0}")]
    InsufficientPrefix(String),

    #[error("inconsistent samples: {0}")]
    InconsistentSamples(String),

    #[error("unclassifiable sample: {0}")]
    UnclassifiableSample(String),

    #[error("no gap found among the sample points")]
    NoGapFound,

    #[error("no candidate survived: {0}")]
    NoCandidate(String),

    #[error("ambiguous reconstruction: {0}")]
    Ambiguous(String),

    #[error("bases {0} and {1} are not powers of a common integer")]
    NotDependent(usize, usize),

    #[error("oracle cannot answer: {0}")]
    MissingSample(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// True for failures of a sampling procedure, as opposed to bad input.
    pub fn is_procedure_failure(&self) -> bool {
        matches!(
            self,
            Error::InconsistentSamples(_)
                | Error::UnclassifiableSample(_)
                | Error::NoCandidate(_)
                | Error::Ambiguous(_)
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
