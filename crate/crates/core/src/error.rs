use thiserror::Error;

use crate::graph::Edge;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("capacity exceeded: {0} vertices requested, supported range is 1..=64")]
    Capacity(usize),
    #[error("loop at vertex {0}")]
    Loop(usize),
    #[error("vertex {vertex} out of range for a graph of order {order}")]
    VertexOutOfRange { vertex: usize, order: usize },
    #[error("malformed graph: {0}")]
    Malformed(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Graph6Error {
    #[error("empty graph6 string")]
    Empty,
    #[error("byte {byte:#04x} at offset {offset} is outside the graph6 range 63..=126")]
    BadByte { byte: u8, offset: usize },
    #[error("malformed header")]
    BadHeader,
    #[error("truncated payload: expected {expected} data bytes, found {found}")]
    Truncated { expected: usize, found: usize },
    #[error("trailing bytes after payload: expected {expected} data bytes, found {found}")]
    Trailing { expected: usize, found: usize },
    #[error("nonzero padding bits")]
    NonzeroPadding,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Graph6(#[from] Graph6Error),
    #[error("invalid pattern: {0}")]
    InvalidPattern(String),
    #[error("pattern on {pattern} vertices does not fit a graph of order {order}")]
    PatternTooLarge { pattern: usize, order: usize },
    #[error("edge {0} is already present")]
    EdgePresent(Edge),
    #[error("not weakly saturated: graph contains a copy of the pattern")]
    NotPatternFree,
    #[error("not weakly saturated: closure stops at {final_edges} of {pairs} edges")]
    ClosureIncomplete { final_edges: usize, pairs: usize },
    #[error("{missing} missing edges exceeds the brute-force limit of {limit}")]
    TooManyMissingEdges { missing: usize, limit: usize },
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("certificate format: {0}")]
    Format(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
