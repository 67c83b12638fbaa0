use crate::field::{InconsistentFactorization, RootsError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("the zero operator is not allowed here")]
    ZeroOperator,
    #[error("operator must have polynomial coefficients")]
    NotPolynomial,
    #[error("place must be a non-constant squarefree polynomial")]
    NotSquarefree,
    #[error(transparent)]
    Roots(#[from] RootsError),
    #[error(transparent)]
    Factorization(#[from] InconsistentFactorization),
    #[error("exceptional set needs more than {cap} generators")]
    ExceptionalCap { cap: usize },
    #[error("shell factorization failed: {0}")]
    Shell(String),
    #[error("no cyclic vector found after {0} trials")]
    NoCyclicVector(usize),
    #[error("internal error: {0}")]
    Internal(String),
    #[error("invalid system: {0}")]
    InvalidSystem(String),
}
