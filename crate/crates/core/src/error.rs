use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("element does not belong to the group: {0}")]
    GroupMismatch(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("homomorphism is not well defined: {0}")]
    NotWellDefined(String),
    #[error("domain mismatch in composition: {0}")]
    DomainMismatch(String),
    #[error("malformed constraint: {0}")]
    MalformedConstraint(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("parameter out of range at position {pos}: {msg}")]
    ParamOutOfRange { pos: usize, msg: String },
    #[error("{0} does not have finitely generated K-theory; only finitely generated K-groups are supported")]
    NonFinitelyGenerated(String),
    #[error("free products can only appear at the root of an expression: {0}")]
    UnsupportedNesting(String),
    #[error(
        "expression evaluates to a free-product K-pair, not an invariant of a unital algebra: {0}"
    )]
    NotAnInvariant(String),
    #[error("invalid JSON: {0}")]
    Json(String),
}

pub type Result<T> = std::result::Result<T, Error>;
