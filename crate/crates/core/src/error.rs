use thiserror::Error;

use crate::graph::Pair;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("vertex {vertex} out of range for graph on {n} vertices (edge {edge:?})")]
    VertexOutOfRange {
        vertex: usize,
        n: usize,
        edge: (usize, usize),
    },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("pair endpoints must differ (got {0}, {0})")]
    SamePair(usize),
    #[error("snapshot time {t} out of range 0..={max}")]
    TimeOutOfRange { t: usize, max: usize },
    #[error("probability {0} outside [0, 1]")]
    BadProbability(f64),
    #[error("edge {0} is not assigned a colour")]
    Unassigned(Pair),
    #[error("colour assigned to non-edge {0}")]
    ColourOutsideGraph(Pair),
    #[error("colour {colour} out of range for k = {k}")]
    ColourOutOfRange { colour: usize, k: usize },
    #[error("number of colours {k} not supported here (allowed {min}..={max})")]
    UnsupportedColours { k: usize, min: usize, max: usize },
    #[error("graph sizes differ: {0} vs {1}")]
    SizeMismatch(usize, usize),
    #[error("pair {0} is adjacent")]
    AdjacentPair(Pair),
    #[error("{0} is not a spanning subgraph")]
    NotSpanning(&'static str),
    #[error("invalid parameters: {0}")]
    Params(String),
    #[error("property does not hold at the complete graph")]
    PropertyNeverHolds,
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("io: {0}")]
    Io(String),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
