use crate::trigraph::Vertex;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("unknown vertex {0}")]
    UnknownVertex(Vertex),
    #[error("cannot contract vertex {0} with itself")]
    SameVertex(Vertex),
    #[error("self-loop on vertex {0}")]
    SelfLoop(Vertex),
    #[error("parallel step has overlapping pairs at vertex {0}")]
    OverlappingPairs(Vertex),
    #[error("step {index} is not applicable: {reason}")]
    InapplicableStep { index: usize, reason: String },
    #[error("sequence does not end at a single vertex ({remaining} left)")]
    Incomplete { remaining: usize },
    #[error("red degree {width} exceeds the declared bound {bound}")]
    WidthExceeded { width: usize, bound: usize },
    #[error("no contraction keeps red degree within {bound} at stage {stage} ({remaining} vertices left)")]
    NoContraction {
        stage: usize,
        remaining: usize,
        bound: usize,
    },
    #[error("instance size {size} exceeds the configured cap {cap}")]
    CapExceeded { size: usize, cap: usize },
    #[error("invalid split record: {0}")]
    InvalidSplit(String),
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("invalid division: {0}")]
    InvalidDivision(String),
    #[error("matrix error: {0}")]
    Matrix(String),
    #[error("division is not neat: {0}")]
    NotNeat(String),
    #[error("columns {0} and {1} are not identical")]
    NotIdentical(usize, usize),
    #[error("coarsening stalled after {fusions} fusions with {pairs} pairs found")]
    Stall { fusions: usize, pairs: usize },
    #[error("codec error: {0}")]
    Codec(String),
    #[error("label error: {0}")]
    Label(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }
}
