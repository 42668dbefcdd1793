use thiserror::Error;

/// Errors raised by state construction and the entanglement routines.
///
/// Optimizer budget exhaustion is not an error: it is reported through
/// [`crate::Diagnostics::converged`] alongside the best value found.
#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed state JSON: {0}")]
    Json(#[from] serde_json::Error),

    #[error("amplitude count {got} does not match the product of dims {expected}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("party dimension must be at least 2 (party {party} has {dim})")]
    InvalidDimension { party: usize, dim: usize },

    #[error("total dimension {0} exceeds the supported maximum of 2^20")]
    TooLarge(usize),

    #[error("state has zero norm")]
    ZeroState,

    #[error("state norm {norm} is too far from 1 to renormalize silently")]
    NotNormalized { norm: f64 },

    #[error("party index {party} out of range for a {parties}-party state")]
    InvalidParty { party: usize, parties: usize },

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("invalid permutation {0:?}")]
    InvalidPermutation(Vec<usize>),

    #[error("projection vector must have unit norm (got {norm})")]
    NonUnitVector { norm: f64 },

    #[error("basis is not orthonormal (deviation {deviation:e})")]
    NonOrthonormalBasis { deviation: f64 },

    #[error("expected a two-block cut, got {0} blocks")]
    NotBipartite(usize),

    #[error("party {party} has dimension {dim}, expected a qubit")]
    NotQubit { party: usize, dim: usize },

    #[error("expected {expected} parties, got {got}")]
    WrongPartyCount { expected: usize, got: usize },

    #[error("unknown named state '{0}'")]
    UnknownState(String),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("{what} = {value} is outside the allowed range")]
    OutOfRange { what: &'static str, value: f64 },

    #[error("state is not permutation-symmetric (deviation {0:e}); use the general routine")]
    NotSymmetric(f64),

    #[error("invalid optimizer configuration: {0}")]
    InvalidConfig(String),

    #[error("no party order can be searched within the budget: {0}")]
    BudgetExceeded(String),
}

pub type Result<T> = std::result::Result<T, Error>;
