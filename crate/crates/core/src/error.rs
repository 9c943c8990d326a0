use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid alternative set: {0}")]
    InvalidAlternatives(String),

    #[error("invalid preference: {0}")]
    InvalidPreference(String),

    #[error("invalid menu: {0}")]
    InvalidMenu(String),

    #[error("invalid rational {input:?}: {reason}")]
    InvalidRational { input: String, reason: String },

    #[error("menu probabilities must sum to 1 (menu {menu} sums to {sum})")]
    NotNormalized { menu: String, sum: String },

    #[error("negative probability {value} for {alternative} in menu {menu}")]
    NegativeProbability {
        alternative: String,
        menu: String,
        value: String,
    },

    #[error("invalid weights: {0}")]
    InvalidWeights(String),

    #[error("alternative {alternative} is not a member of menu {menu}")]
    NotAMember { alternative: String, menu: String },

    #[error("{operation} requires at least {min} alternatives, got {n}")]
    TooFewAlternatives {
        operation: &'static str,
        n: usize,
        min: usize,
    },

    #[error("{operation} supports at most {max} alternatives, got {n}")]
    TooManyAlternatives {
        operation: &'static str,
        n: usize,
        max: usize,
    },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("candidate limit exceeded: {count} candidates, limit is {limit}")]
    CandidateLimit { count: usize, limit: usize },

    #[error("alternative sets differ")]
    AlternativeSetMismatch,

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("degenerate component: {0}")]
    DegenerateComponent(String),
}
