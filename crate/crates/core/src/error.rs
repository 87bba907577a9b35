use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("instance mismatch: {0}")]
    InstanceMismatch(String),
    #[error("invalid object: {0}")]
    InvalidObject(String),
    #[error("invalid morphism: {0}")]
    InvalidMorphism(String),
    #[error("differentials do not compose to zero at degree {0}")]
    NotAComplex(i64),
    #[error("not a chain map: {0}")]
    NotAChainMap(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("no lift exists: {0}")]
    NoLift(String),
    #[error("cell budget of {0} exhausted")]
    CellBudget(usize),
    #[error("invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;
