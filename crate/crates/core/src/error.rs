use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("vertex {vertex} out of range for graph with {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("graph must have at least one vertex")]
    EmptyGraph,

    #[error("graph is not connected")]
    Disconnected,

    #[error("({0}, {1}) is not an edge")]
    NotAnEdge(usize, usize),

    #[error("landmark set is empty")]
    EmptyLandmarks,

    #[error("fault-tolerant check needs at least 2 landmarks, got {0}")]
    TooFewLandmarks(usize),

    #[error("level r must be at least {min}, got {r}")]
    LevelTooSmall { r: usize, min: usize },

    #[error("graph with {base}^{r} vertices is too large")]
    TooLarge { base: usize, r: usize },

    #[error("invalid word {word:?}: {reason}")]
    InvalidWord { word: String, reason: String },

    #[error("brute force is limited to {max} vertices, graph has {n}")]
    BruteForceTooLarge { n: usize, max: usize },

    #[error("word {0} has no twin partner")]
    MissingTwinPartner(String),

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("{0}")]
    Unsupported(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
