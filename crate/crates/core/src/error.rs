use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("homomorphism is not well defined: {0}")]
    IllDefinedHom(String),

    #[error("action matrix {index} does not preserve the relation lattice")]
    ActionNotPreserving { index: usize },

    #[error("matrix is not an isometry of the form: {0}")]
    NotIsometry(String),

    #[error("isotropic vector cannot define a reflection")]
    IsotropicVector,

    #[error("epsilon must be +1 or -1, got {0}")]
    BadEpsilon(i64),

    #[error("operation requires a symmetric (epsilon = +1) form")]
    NotSymmetric,

    #[error("genus {g} exceeds the configured bound {bound}")]
    GenusBound { g: usize, bound: usize },

    #[error("an Arf invariant 1 refinement needs genus at least 1")]
    ArfOneGenusZero,

    #[error("unsupported case: {0}")]
    Unsupported(String),

    #[error("invalid input: {0}")]
    Input(String),

    #[error("internal consistency check failed: {0}")]
    Inconsistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;
