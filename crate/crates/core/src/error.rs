use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("element {element} out of range for ground set of size {size}")]
    ElementOutOfRange { element: usize, size: usize },

    #[error("ground set of size {size} exceeds the cap of {cap}")]
    GroundSetTooLarge { size: usize, cap: usize },

    #[error("subsets belong to ground sets of different sizes ({0} vs {1})")]
    GroundMismatch(usize, usize),

    #[error("contract and delete sets overlap")]
    OverlappingMinor,

    #[error("label {0} is not an element of the host matroid")]
    LabelMismatch(u32),

    #[error("set is not a circuit-hyperplane")]
    NotCircuitHyperplane,

    #[error("matroid is not connected")]
    Disconnected,

    #[error("precondition violated: {0}")]
    Precondition(String),

    /// A structural statement that is supposed to hold failed on a concrete
    /// instance. Callers treat this as a verification failure.
    #[error("structural claim violated: {0}")]
    ClaimViolated(String),

    #[error("search budget exhausted after reaching size {achieved}")]
    BudgetExhausted { achieved: usize },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub(crate) fn claim(msg: impl Into<String>) -> Self {
        Error::ClaimViolated(msg.into())
    }
}
