use thiserror::Error;

use crate::graph::{EdgeId, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("unknown vertex {0}")]
    UnknownVertex(VertexId),
    #[error("unknown edge {0}")]
    UnknownEdge(EdgeId),
    #[error("edge id {0} already in use")]
    DuplicateEdge(EdgeId),
    #[error("vertex {0} has odd degree")]
    OddDegree(VertexId),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TrailError {
    #[error("unknown edge {0}")]
    UnknownEdge(EdgeId),
    #[error("edge {0} occurs twice")]
    RepeatedEdge(EdgeId),
    #[error("step {position} does not start where step {} ends", position - 1)]
    Discontinuous { position: usize },
    #[error("trails do not meet: first ends at {head}, second starts at {tail}")]
    EndMismatch { head: VertexId, tail: VertexId },
    #[error("edge {0} is not incident to vertex {1}")]
    NotIncident(EdgeId, VertexId),
    #[error("split-off needs two distinct edges")]
    SameEdge,
    #[error("empty trail has no ends")]
    Empty,
}
