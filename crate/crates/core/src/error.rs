use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("grid mismatch: operands live on different grids")]
    GridMismatch,

    #[error("domain error: {0}")]
    Domain(String),

    #[error("unsupported quantum number n = {n} for {reference}")]
    UnsupportedQuantumNumber { n: usize, reference: &'static str },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("division hazard at node {index} (x = {x}): {reason}")]
    DivisionHazard { index: usize, x: f64, reason: &'static str },

    #[error("domain too small: {0}")]
    DomainTooSmall(String),

    #[error("non-finite sample at node {0}")]
    NonFinite(usize),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
