use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid shape: {0}")]
    InvalidShape(String),
    #[error("shape is not a ribbon")]
    NotARibbon,
    #[error("shape has {0} corners, expected exactly one")]
    NotOneCorner(usize),
    #[error("filling does not match shape: {0}")]
    BadFilling(String),
    #[error("non-admissible index or filling: {0}")]
    NonAdmissible(String),
    #[error("numeric budget exceeded: best bound {best_bound:e} above tolerance {tol:e}")]
    BudgetExceeded { best_bound: f64, tol: f64 },
    #[error("domain error: {0}")]
    Domain(String),
    #[error("poset has {size} elements, above the cap of {cap}")]
    CapExceeded { size: usize, cap: usize },
    #[error("malformed chain: {0}")]
    MalformedChain(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
