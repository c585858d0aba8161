use thiserror::Error;

/// Errors raised by constructions over finite instances.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid category: {0}")]
    InvalidCategory(String),
    #[error("invalid functor: {0}")]
    InvalidFunctor(String),
    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),
    #[error("invalid natural transformation: {0}")]
    InvalidTransformation(String),
    #[error("invalid multicategory: {0}")]
    InvalidMulticategory(String),
    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),
    #[error("invalid multifunctor: {0}")]
    InvalidMultifunctor(String),
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("invalid set map: {0}")]
    InvalidSetMap(String),
    #[error("codomain mismatch: {0}")]
    CodomainMismatch(String),
    #[error("base mismatch: {0}")]
    BaseMismatch(String),
    #[error("variance mismatch")]
    VarianceMismatch,
    #[error("not a covering: {0}")]
    NotCovering(String),
    #[error("not connected: {0}")]
    NotConnected(String),
    #[error("base is not a groupoid")]
    NotGroupoid,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("enumeration budget of {0} exceeded")]
    Budget(usize),
    #[error("support bound of {0} exceeded")]
    SupportExceeded(usize),
    #[error("operation not available: {0}")]
    Unsupported(String),
    #[error("internal invariant broken: {0}")]
    Internal(String),
}

impl Error {
    pub fn is_budget(&self) -> bool {
        matches!(self, Error::Budget(_))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Default cap on the number of candidates an exhaustive search may emit.
pub const DEFAULT_BUDGET: usize = 1_000_000;
