use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range (id bound {bound})")]
    OutOfRange { vertex: u32, bound: usize },
    #[error("vertex {0} is deleted")]
    DeadVertex(u32),
    #[error("loop edge at vertex {0}")]
    Loop(u32),
    #[error("{x}{y} is not an edge; pivot is only defined for edges")]
    NotAnEdge { x: u32, y: u32 },
    #[error("duplicate vertex in set")]
    DuplicateVertex,
    #[error("not a permutation of the vertex ids")]
    BadPermutation,
    #[error("vertex sets overlap")]
    OverlappingSets,
    #[error("graph has {n} vertices but this operation supports at most {max}")]
    UnsupportedSize { n: usize, max: usize },
    #[error("replay failed at step {step}: {reason}")]
    Replay { step: usize, reason: String },
    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("size mismatch: {0}")]
    SizeMismatch(String),
    #[error("invalid {kind}: {reason}")]
    Invalid { kind: &'static str, reason: String },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("family spec below minimum size: {0}")]
    FamilyTooSmall(String),
    #[error("guarantee mode refused: {0}")]
    GuaranteeRefused(String),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn invalid(kind: &'static str, reason: impl Into<String>) -> Self {
        Error::Invalid {
            kind,
            reason: reason.into(),
        }
    }

    pub fn precondition(reason: impl Into<String>) -> Self {
        Error::Precondition(reason.into())
    }
}
