use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("variable set mismatch: {0:?} vs {1:?}")]
    VarSetMismatch(crate::poly::VarSet, crate::poly::VarSet),

    #[error("group closure exceeded cap of {cap} elements")]
    CapExceeded { cap: usize },

    #[error("vanishing order of the zero polynomial is undefined")]
    ZeroPolynomial,

    #[error("no solution: {0}")]
    NoSolution(String),

    #[error("verification failed: {0}")]
    Verification(String),

    #[error("unknown name `{0}`")]
    Unknown(String),

    #[error("cache: {0}")]
    Cache(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Fails with [`Error::Verification`] when `cond` is false.
pub(crate) fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::Verification(msg()))
    }
}
