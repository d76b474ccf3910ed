use crate::chain::{EdgeId, NodeId};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("duplicate node id {0}")]
    DuplicateNode(NodeId),
    #[error("duplicate bar id {0}")]
    DuplicateEdge(EdgeId),
    #[error("bar {edge} references unknown node {node}")]
    UnknownNodeRef { edge: EdgeId, node: NodeId },
    #[error("bar {0} starts and ends at the same node")]
    SelfLoop(EdgeId),
    #[error("structure is disconnected: node {unreached} cannot be reached from node {root}")]
    Disconnected { root: NodeId, unreached: NodeId },
    #[error("structure has no nodes")]
    Empty,
    #[error("unknown node {0}")]
    UnknownNode(NodeId),
    #[error("unknown bar {0}")]
    UnknownEdge(EdgeId),
    #[error("chain coefficient overflow")]
    Overflow,
    #[error("self-stress state has no resultant for the cycle generated by bar {0}")]
    MissingCycle(EdgeId),
    #[error("bar {0} has zero length")]
    ZeroLengthBar(EdgeId),
    #[error("axial force vector is not a self-stress: relative residual {residual:e} exceeds {tol:e}")]
    NotSelfStress { residual: f64, tol: f64 },
    #[error("axial force vector has no entry for bar {0}")]
    MissingForce(EdgeId),
    #[error("resultant is not axial for bar direction: {0}")]
    NonAxial(String),
    #[error("invalid loop: {0}")]
    InvalidLoop(String),
    #[error("invalid structure document: {0}")]
    Syntax(#[from] serde_json::Error),
    #[error("invalid document: {0}")]
    Document(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
