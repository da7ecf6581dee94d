use thiserror::Error;

use crate::subset::Subset;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("ground set size {0} is outside 1..=20")]
    InvalidGroundSet(usize),

    #[error("element {element} is out of range for a ground set of {n} elements")]
    ElementOutOfRange { element: usize, n: usize },

    #[error("element {element} is not a member of {set}")]
    NotAMember { element: usize, set: Subset },

    #[error("function is not increasing: marginal of element {element} at {set} is negative")]
    NonMonotone { set: Subset, element: usize },

    #[error("function is not strictly increasing: marginal of element {element} at {set} is not positive")]
    NotStrictlyIncreasing { set: Subset, element: usize },

    #[error("ground set of {n} elements exceeds the limit of {limit} for this operation")]
    GroundSetTooLarge { n: usize, limit: usize },

    #[error("invalid matroid spec: {reason}")]
    InvalidSpec {
        reason: String,
        witness: Option<(Subset, Subset)>,
    },

    #[error("infeasible: matroid rank {rank} is below the required base cardinality {required}")]
    Infeasible { rank: usize, required: usize },

    #[error("infeasible instance: matroid rank {rank} is below N = {required}")]
    InfeasibleInstance { rank: usize, required: usize },

    #[error("ordering witness construction failed: {0}")]
    WitnessFailure(String),

    #[error("trace does not match the instance: {0}")]
    TraceMismatch(String),

    #[error("{name} = {value} is outside [0, 1]")]
    OutOfRange { name: &'static str, value: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("schema error: {0}")]
    Schema(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn invalid_spec(reason: impl Into<String>) -> Self {
        Error::InvalidSpec {
            reason: reason.into(),
            witness: None,
        }
    }
}
