use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {msg}")]
    EdgeListFormat { line: usize, msg: String },

    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("duplicate edge {0} {1}")]
    DuplicateEdge(usize, usize),

    #[error("vertex {0} is already blue")]
    AlreadyBlue(usize),

    #[error("invalid spreading parameters: {0}")]
    BadParams(String),

    #[error("graph is not cubic")]
    NotCubic,

    #[error("graph is not claw-free")]
    NotClawFree,

    #[error("graph is not connected")]
    NotConnected,

    #[error("the complete graph on four vertices has no triangle-diamond partition")]
    NoPartitionForK4,

    #[error("graph has no triangle-unit")]
    NoTriangleUnit,

    #[error("infeasible parameters: {0}")]
    Infeasible(String),

    #[error("retry budget exhausted after {attempts} attempts: {diagnostic}")]
    RetriesExhausted { attempts: usize, diagnostic: String },

    #[error("graph too large for the exact solver (n = {n}, limit 64)")]
    TooLarge { n: usize },

    #[error("empty graph")]
    EmptyGraph,

    #[error("{0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
