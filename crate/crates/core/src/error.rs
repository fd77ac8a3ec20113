use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EquilogError {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("quotient map must be onto")]
    NotOnto,

    #[error("presheaf object infinite; enough-injectives restricted to finite quantales")]
    InfinitePresheaf,

    #[error("enumeration bound exceeded: {what} needs {needed} candidates, bound is {bound}")]
    BoundExceeded {
        what: String,
        needed: u128,
        bound: u128,
    },

    #[error("candidate exponential rejected: {0}")]
    CandidateRejected(String),

    #[error("quantale mismatch: {0} vs {1}")]
    QuantaleMismatch(String, String),

    #[error("base mismatch: expected {expected}, found {found}")]
    BaseMismatch { expected: String, found: String },

    #[error("pseudo-equivalence relation is not a regular mono")]
    NotRegularMono,

    #[error("pseudo-equivalence relation witnesses not found: {0}")]
    Unverified(String),

    #[error("assembly is not a modest set")]
    NotModest,

    #[error("time budget of {seconds}s exhausted during {what}")]
    TimeBudget { what: String, seconds: u64 },
}

pub type Result<T> = std::result::Result<T, EquilogError>;
