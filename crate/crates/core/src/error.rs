use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("blocks do not partition the attachment points: {0}")]
    BadPartition(String),
    #[error("bad leaf labels: {0}")]
    BadLabels(String),
    #[error("loop {loop_index} violates condition {condition}")]
    BadLoop { loop_index: usize, condition: u8 },
    #[error("loop {loop_index} references a missing segment at word position {position}")]
    BadSegment { loop_index: usize, position: usize },
    #[error("invalid vertex {0}")]
    InvalidVertex(usize),
    #[error("invalid segment {segment} at vertex {vertex}")]
    InvalidSegment { vertex: usize, segment: usize },
    #[error("vertex {0} has valence below 2")]
    ValenceTooLow(usize),
    #[error("invalid insertion position {position} at vertex {vertex}")]
    InvalidPosition { vertex: usize, position: usize },
    #[error("signature mismatch: {0}")]
    SignatureMismatch(String),
    #[error("cacti predicate needs a signature without plain leaves")]
    BadSignature,
    #[error("not a Sullivan diagram: {0}")]
    NotSullivan(String),
    #[error("leaf {0} is not the only labeled leaf in its boundary cycle")]
    LeafNotSoleInCycle(usize),
    #[error("generator count {count} in degree {degree} exceeds the bound {bound}")]
    ExplosionGuard { degree: usize, count: usize, bound: usize },
    #[error("inconsistent complex: {0}")]
    InconsistentComplex(String),
    #[error("families are not composable: {0}")]
    NotComposable(String),
    #[error("a block without outputs needs a counit")]
    CounitRequired,
    #[error("arity mismatch: expected {expected}, found {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("profile mismatch: {0}")]
    ProfileMismatch(String),
    #[error("leaf {0} has no assigned input")]
    UnassignedLeaf(usize),
    #[error("the unit must be a basis vector for normalized chains")]
    UnitNotBasis,
    #[error("truncated family cannot answer profile {0}")]
    Truncated(String),
    #[error("unknown catalog entry {0}")]
    UnknownName(String),
    #[error("invalid data: {0}")]
    InvalidData(String),
    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
