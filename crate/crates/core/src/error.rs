use thiserror::Error;

use crate::simplex::LpError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("point index {index} out of range for a space with {len} points")]
    PointOutOfRange { index: usize, len: usize },

    #[error("invalid point: {0}")]
    InvalidPoint(String),

    #[error("{0} must be nonempty")]
    EmptySet(&'static str),

    #[error("operands live on different spaces")]
    SpaceMismatch,

    #[error("metrics are defined on different point domains")]
    DomainMismatch,

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error(
        "samples {i} and {j} are not {bound}-Lipschitz compatible: |y_i - y_j| = {gap} > {limit}"
    )]
    IncompatibleSamples {
        i: usize,
        j: usize,
        gap: f64,
        limit: f64,
        bound: f64,
    },

    #[error("support hints of summands {i} and {j} overlap")]
    OverlappingSupports { i: usize, j: usize },

    #[error("summand {0} carries no support hint")]
    MissingSupportHint(usize),

    #[error("function evaluation failed: {0}")]
    Evaluation(String),

    #[error("support of size {size} exceeds the LP cap of {cap}")]
    SupportTooLarge { size: usize, cap: usize },

    #[error("distinct atoms {i} and {j} are at distance zero")]
    DegenerateDistance { i: usize, j: usize },

    #[error("sample pair {0} is coincident")]
    CoincidentPair(usize),

    #[error("kernel row {row} is not stochastic (sum {sum})")]
    NonStochastic { row: usize, sum: f64 },

    #[error("map sends a point outside its declared codomain: {0}")]
    CodomainViolation(String),

    #[error("iteration would produce {atoms} atoms, above the cap of {cap}")]
    AtomCapExceeded { atoms: usize, cap: usize },

    #[error("cannot resolve oscillation of a density without a frequency hint")]
    UnresolvableOscillation,

    #[error("expected a positive measure, found weight {weight} in input {index}")]
    SignedInput { index: usize, weight: f64 },

    #[error("malformed input at `{field}`: {message}")]
    Parse { field: String, message: String },

    #[error("invariant violated: {0}")]
    InvariantViolation(String),

    #[error(transparent)]
    Solver(#[from] LpError),
}

impl Error {
    pub(crate) fn param(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }

    pub(crate) fn parse(field: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            field: field.into(),
            message: message.into(),
        }
    }
}
