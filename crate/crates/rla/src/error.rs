//! Error type shared across the crate.

use thiserror::Error;

use crate::algebra::ValidationReport;

/// Unified error for field construction, algebra validation, structure
/// queries, and budgeted enumerations.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("modulus polynomial is reducible over GF({p})")]
    ReducibleModulus { p: u64 },

    #[error("invalid field parameters: {0}")]
    BadField(String),

    #[error("algebra definition is malformed: {0}")]
    BadAlgebra(String),

    #[error("algebra identities violated: {0}")]
    Validation(ValidationReport),

    #[error("elements belong to different algebras")]
    AlgebraMismatch,

    #[error("subspace lives in a different ambient space")]
    AmbientMismatch,

    #[error("subspace is not a subalgebra")]
    NotASubalgebra,

    #[error("subspace is not a restricted ideal")]
    NotARestrictedIdeal,

    #[error("subspace is not a torus with a toral basis")]
    NotATorus,

    #[error("algebra is not solvable")]
    NotSolvable,

    #[error("polynomial is not monic")]
    NotMonic,

    #[error("division by the zero polynomial")]
    DivisionByZero,

    #[error("bad family parameters: {0}")]
    BadParameters(String),

    #[error("resource limit exceeded: needed {needed} units, budget {budget}")]
    ResourceLimit { needed: u64, budget: u64 },

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Process exit code for the CLI contract: 1 for parse/validation
    /// problems, 3 for exhausted budgets.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::ResourceLimit { .. } => 3,
            _ => 1,
        }
    }
}
