use std::path::PathBuf;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("I/O error on {path}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("truncated graph file: need {expected} bytes, found {actual}")]
    Truncated { expected: u64, actual: u64 },

    #[error("size mismatch: header says {header} bytes, file has {actual}")]
    SizeMismatch { header: u64, actual: u64 },

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("unsupported graph format: {0}")]
    UnknownFormat(String),

    #[error("vertex id {id} out of range for {n} vertices")]
    VertexOutOfRange { id: u64, n: u64 },

    #[error("graph has {0} vertices, more than 32-bit ids can address")]
    TooManyVertices(u64),

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("invalid forest: {0}")]
    InvalidForest(String),

    #[error("malformed linked list: {0}")]
    MalformedList(String),

    #[error("sparse table over an empty array")]
    EmptyArray,

    #[error("({u}, {v}) is not an edge of the graph")]
    NotAnEdge { u: u32, v: u32 },

    #[error("inconsistent labeling: {0}")]
    InconsistentLabeling(String),

    #[error("brute-force oracle limited to {max} vertices, got {n}")]
    TooLarge { n: usize, max: usize },

    #[error("allocation of {words} words failed")]
    Allocation { words: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}
