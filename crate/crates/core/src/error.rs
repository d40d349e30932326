//! Crate-wide error type with stable machine-readable codes.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("zero denominator")]
    ZeroDenominator,

    #[error("matrix has non-integral entries")]
    NonIntegral,

    #[error("matrix does not scale the standard symplectic form")]
    NotSimilitude,

    #[error("similitude factor is negative")]
    NegativeSimilitude,

    #[error("unsupported genus {0}")]
    UnsupportedGenus(usize),

    #[error("matrix is rank deficient")]
    RankDeficient,

    #[error("matrix is not in Sp_2g(Z)")]
    NotInGamma,

    #[error("matrix entries have a common factor; primitivize first")]
    NotPrimitive,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("lattice orbit exceeded the cap of {cap} elements")]
    OrbitBudgetExceeded { cap: usize },

    #[error("subgroup closure exceeded the cap of {cap} elements")]
    ClosureBudgetExceeded { cap: usize },

    #[error("graph is disconnected")]
    DisconnectedGraph,

    #[error("iteration did not converge")]
    NonConvergence,

    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

impl Error {
    /// Stable code string used by the CLI for machine-readable failures.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Parse(_) => "PARSE_ERROR",
            Error::ZeroDenominator => "ZERO_DENOMINATOR",
            Error::NonIntegral => "NON_INTEGRAL",
            Error::NotSimilitude => "NOT_SIMILITUDE",
            Error::NegativeSimilitude => "NEGATIVE_SIMILITUDE",
            Error::UnsupportedGenus(_) => "UNSUPPORTED_GENUS",
            Error::RankDeficient => "RANK_DEFICIENT",
            Error::NotInGamma => "NOT_IN_GAMMA",
            Error::NotPrimitive => "NOT_PRIMITIVE",
            Error::Precondition(_) => "PRECONDITION_VIOLATED",
            Error::OrbitBudgetExceeded { .. } => "ORBIT_BUDGET_EXCEEDED",
            Error::ClosureBudgetExceeded { .. } => "CLOSURE_BUDGET_EXCEEDED",
            Error::DisconnectedGraph => "DISCONNECTED_GRAPH",
            Error::NonConvergence => "NON_CONVERGENCE",
            Error::Internal(_) => "INTERNAL",
        }
    }
}
