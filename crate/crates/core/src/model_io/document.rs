//! Versioned JSON structure documents.
//!
//! ```json
//! {
//!   "format": "homstat-structure/1",
//!   "nodes": [{"id": 0, "x": 0.0, "y": 0.0, "z": 0.0}],
//!   "bars": [{"id": 0, "tail": 0, "head": 1}],
//!   "metadata": {"units": "kN, m"}
//! }
//! ```
//!
//! Fields this crate does not know about are kept and written back out.

use nalgebra::Vector3;
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::chain::{Edge, EdgeId, FrameGraph, Node, NodeId};
use crate::error::{Error, Result};

pub const STRUCTURE_FORMAT: &str = "homstat-structure/1";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NodeRecord {
    pub id: NodeId,
    pub x: f64,
    pub y: f64,
    pub z: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    #[serde(flatten)]
    pub extra: Map<String, Value>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BarRecord {
    pub id: EdgeId,
    pub tail: NodeId,
    pub head: NodeId,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    #[serde(flatten)]
    pub extra: Map<String, Value>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StructureDocument {
    pub format: String,
    pub nodes: Vec<NodeRecord>,
    pub bars: Vec<BarRecord>,
    #[serde(default, skip_serializing_if = "Map::is_empty")]
    pub metadata: Map<String, Value>,
    #[serde(flatten)]
    pub extra: Map<String, Value>,
}

impl StructureDocument {
    pub fn new(nodes: Vec<NodeRecord>, bars: Vec<BarRecord>) -> Self {
        Self { format: STRUCTURE_FORMAT.to_owned(), nodes, bars, metadata: Map::new(), extra: Map::new() }
    }

    pub fn node(id: u32, p: Vector3<f64>, label: Option<&str>) -> NodeRecord {
        NodeRecord { id: NodeId(id), x: p.x, y: p.y, z: p.z, label: label.map(str::to_owned), extra: Map::new() }
    }

    pub fn bar(id: u32, tail: u32, head: u32, label: Option<&str>) -> BarRecord {
        BarRecord { id: EdgeId(id), tail: NodeId(tail), head: NodeId(head), label: label.map(str::to_owned), extra: Map::new() }
    }

    pub fn to_graph(&self) -> Result<FrameGraph<f64>> {
        validate(self)
    }

    pub fn bar_label(&self, id: EdgeId) -> Option<&str> {
        self.bars.iter().find(|b| b.id == id).and_then(|b| b.label.as_deref())
    }
}

/// Parses a document. Only JSON syntax and the format tag are checked here;
/// see [`validate`] for the graph itself.
pub fn parse_structure(text: &str) -> Result<StructureDocument> {
    let doc: StructureDocument = serde_json::from_str(text)?;
    if doc.format != STRUCTURE_FORMAT {
        return Err(Error::Document(format!("unsupported format {:?}, expected {STRUCTURE_FORMAT:?}", doc.format)));
    }
    Ok(doc)
}

pub fn serialize_structure(doc: &StructureDocument) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("documents always serialise");
    s.push('\n');
    s
}

pub fn validate(doc: &StructureDocument) -> Result<FrameGraph<f64>> {
    for n in &doc.nodes {
        if ![n.x, n.y, n.z].iter().all(|c| c.is_finite()) {
            return Err(Error::Document(format!("node {} has a non-finite coordinate", n.id)));
        }
    }
    let nodes = doc.nodes.iter().map(|n| Node { id: n.id, position: Vector3::new(n.x, n.y, n.z) }).collect();
    let edges = doc.bars.iter().map(|b| Edge::new(b.id, b.tail, b.head)).collect();
    FrameGraph::new(nodes, edges)
}
