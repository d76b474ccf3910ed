//! Spanning trees and the fundamental cycle basis they induce.
//!
//! The tree is grown breadth-first from the lowest node id (or a chosen
//! root), scanning incident bars in input order, so identical input always
//! yields the identical tree. Every bar left out of the tree closes exactly
//! one cycle through it; these `e - v + 1` cycles span the kernel of the
//! boundary operator.

use std::collections::{BTreeSet, HashMap, VecDeque};

use crate::chain::{Chain1, EdgeId, FrameGraph, NodeId};
use crate::error::{Error, Result};
use crate::scalar::Coord;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ParentLink {
    pub parent: NodeId,
    pub edge: EdgeId,
    /// `+1` when stepping from the child to its parent runs tail to head.
    pub sign: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpanningTree {
    pub root: NodeId,
    pub edges: BTreeSet<EdgeId>,
    pub parent: HashMap<NodeId, ParentLink>,
    depth: HashMap<NodeId, usize>,
}

impl SpanningTree {
    pub fn contains(&self, edge: EdgeId) -> bool {
        self.edges.contains(&edge)
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Signed tree path from `from` to `to`.
    pub fn path(&self, from: NodeId, to: NodeId) -> Chain1 {
        let mut up = Vec::new();
        let mut down = Vec::new();
        let (mut a, mut b) = (from, to);
        while a != b {
            if self.depth[&a] >= self.depth[&b] {
                let link = self.parent[&a];
                up.push((link.edge, link.sign));
                a = link.parent;
            } else {
                let link = self.parent[&b];
                down.push((link.edge, -link.sign));
                b = link.parent;
            }
        }
        Chain1::from_terms(up.into_iter().chain(down))
    }
}

/// Breadth-first spanning tree rooted at the lowest node id.
pub fn spanning_tree<T: Coord>(g: &FrameGraph<T>) -> SpanningTree {
    let root = g.nodes().iter().map(|n| n.id).min().expect("frame graphs are non-empty");
    spanning_tree_from(g, root).expect("root is a node of the graph")
}

pub fn spanning_tree_from<T: Coord>(g: &FrameGraph<T>, root: NodeId) -> Result<SpanningTree> {
    g.node(root)?;
    let mut edges = BTreeSet::new();
    let mut parent = HashMap::new();
    let mut depth = HashMap::from([(root, 0usize)]);
    let mut queue = VecDeque::from([root]);
    while let Some(n) = queue.pop_front() {
        for e in g.incident_edges(n)? {
            let next = e.other_end(n);
            if depth.contains_key(&next) {
                continue;
            }
            depth.insert(next, depth[&n] + 1);
            let sign = if e.tail == next { 1 } else { -1 };
            parent.insert(next, ParentLink { parent: n, edge: e.id, sign });
            edges.insert(e.id);
            queue.push_back(next);
        }
    }
    if let Some(missing) = g.nodes().iter().find(|n| !depth.contains_key(&n.id)) {
        return Err(Error::Disconnected { root, unreached: missing.id });
    }
    Ok(SpanningTree { root, edges, parent, depth })
}

/// A basis cycle: its generating non-tree bar with coefficient `+1` plus the
/// signed tree path from that bar's head back to its tail.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FundamentalCycle {
    pub generator: EdgeId,
    pub chain: Chain1,
}

pub fn fundamental_cycles<T: Coord>(g: &FrameGraph<T>, t: &SpanningTree) -> Vec<FundamentalCycle> {
    g.edges()
        .iter()
        .filter(|e| !t.contains(e.id))
        .map(|e| {
            let chain = &Chain1::single(e.id, 1) + &t.path(e.head, e.tail);
            FundamentalCycle { generator: e.id, chain }
        })
        .collect()
}

/// Spanning tree plus the fundamental cycles it induces.
#[derive(Clone, Debug)]
pub struct CycleBasis {
    pub tree: SpanningTree,
    pub cycles: Vec<FundamentalCycle>,
}

impl CycleBasis {
    pub fn new<T: Coord>(g: &FrameGraph<T>) -> Self {
        let tree = spanning_tree(g);
        let cycles = fundamental_cycles(g, &tree);
        Self { tree, cycles }
    }

    pub fn with_root<T: Coord>(g: &FrameGraph<T>, root: NodeId) -> Result<Self> {
        let tree = spanning_tree_from(g, root)?;
        let cycles = fundamental_cycles(g, &tree);
        Ok(Self { tree, cycles })
    }

    pub fn len(&self) -> usize {
        self.cycles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cycles.is_empty()
    }

    pub fn cycle(&self, generator: EdgeId) -> Option<&FundamentalCycle> {
        self.cycles.iter().find(|c| c.generator == generator)
    }

    pub fn membership<T: Coord>(&self, bar: EdgeId, g: &FrameGraph<T>) -> Result<Vec<(EdgeId, i64)>> {
        cycle_membership(bar, &self.cycles, g)
    }
}

/// Basis cycles that use `bar`, identified by their generator, with the
/// coefficient `bar` has in each.
pub fn cycle_membership<T: Coord>(
    bar: EdgeId,
    basis: &[FundamentalCycle],
    g: &FrameGraph<T>,
) -> Result<Vec<(EdgeId, i64)>> {
    g.edge(bar)?;
    Ok(basis
        .iter()
        .filter_map(|c| match c.chain.coeff(bar) {
            0 => None,
            k => Some((c.generator, k)),
        })
        .collect())
}
