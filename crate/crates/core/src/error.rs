use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A multiplication table failed one of the group laws.
    #[error("invalid group table: {law} fails ({detail})")]
    InvalidTable { law: &'static str, detail: String },

    #[error("subgroups belong to different parent groups")]
    ParentMismatch,

    #[error("{what} is not a subgroup of {of}")]
    NotContained { what: String, of: String },

    #[error("expected a group of prime-power order, got order {order}")]
    NotPrimePower { order: usize },

    #[error("{0} is not a prime")]
    NotPrime(u32),

    #[error("{cap} cap exceeded (limit {limit})")]
    CapExceeded { cap: &'static str, limit: usize },

    #[error("invariant violation: {0}")]
    InvariantViolation(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("invalid semidirect action: {0}")]
    InvalidAction(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("map is not a homomorphism: {0}")]
    NotHomomorphism(String),
}

impl Error {
    pub fn is_cap(&self) -> bool {
        matches!(self, Error::CapExceeded { .. })
    }
}
