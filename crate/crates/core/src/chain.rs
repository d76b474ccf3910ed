//! Integer chain groups over the nodes and directed bars of a frame.
//!
//! A frame is a connected directed multigraph whose nodes carry a position in
//! 3D. `Chain0` and `Chain1` are formal integer sums of nodes and bars; the
//! boundary operator sends a bar to `head - tail` and a 1-chain is a cycle
//! when its boundary vanishes. Everything here is exact integer arithmetic.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;
use std::ops::{Add, Neg, Sub};

use nalgebra::Vector3;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Coord;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct NodeId(pub u32);

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EdgeId(pub u32);

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n{}", self.0)
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "b{}", self.0)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Node<T: Coord> {
    pub id: NodeId,
    pub position: Vector3<T>,
}

/// A directed bar. Orientation is a bookkeeping choice and carries no
/// physical meaning beyond fixing signs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Edge {
    pub id: EdgeId,
    pub tail: NodeId,
    pub head: NodeId,
}

impl Edge {
    pub fn new(id: EdgeId, tail: NodeId, head: NodeId) -> Self {
        Self { id, tail, head }
    }

    /// A bar given without a direction runs from the lower node id to the higher.
    pub fn undirected(id: EdgeId, a: NodeId, b: NodeId) -> Self {
        Self::new(id, a.min(b), a.max(b))
    }

    /// Incidence of this bar on `node`: `+1` at the head, `-1` at the tail.
    pub fn incidence(&self, node: NodeId) -> i64 {
        match (self.head == node, self.tail == node) {
            (true, false) => 1,
            (false, true) => -1,
            _ => 0,
        }
    }

    pub fn other_end(&self, node: NodeId) -> NodeId {
        if self.tail == node {
            self.head
        } else {
            self.tail
        }
    }
}

/// A connected frame: nodes with positions and directed bars between them.
///
/// Parallel bars are allowed, self-loops are not.
#[derive(Clone, Debug)]
pub struct FrameGraph<T: Coord> {
    nodes: Vec<Node<T>>,
    edges: Vec<Edge>,
    node_index: HashMap<NodeId, usize>,
    edge_index: HashMap<EdgeId, usize>,
    // incident edge positions per node, in input order
    incident: Vec<Vec<usize>>,
}

impl<T: Coord> FrameGraph<T> {
    /// Validates and builds a frame. Rejects duplicate ids, dangling bar
    /// ends, self-loops and disconnected input.
    pub fn new(nodes: Vec<Node<T>>, edges: Vec<Edge>) -> Result<Self> {
        if nodes.is_empty() {
            return Err(Error::Empty);
        }
        let mut node_index = HashMap::with_capacity(nodes.len());
        for (i, n) in nodes.iter().enumerate() {
            if node_index.insert(n.id, i).is_some() {
                return Err(Error::DuplicateNode(n.id));
            }
        }
        let mut edge_index = HashMap::with_capacity(edges.len());
        let mut incident = vec![Vec::new(); nodes.len()];
        for (i, e) in edges.iter().enumerate() {
            if edge_index.insert(e.id, i).is_some() {
                return Err(Error::DuplicateEdge(e.id));
            }
            for end in [e.tail, e.head] {
                if !node_index.contains_key(&end) {
                    return Err(Error::UnknownNodeRef { edge: e.id, node: end });
                }
            }
            if e.tail == e.head {
                return Err(Error::SelfLoop(e.id));
            }
            incident[node_index[&e.tail]].push(i);
            incident[node_index[&e.head]].push(i);
        }
        let graph = Self { nodes, edges, node_index, edge_index, incident };
        graph.check_connected()?;
        Ok(graph)
    }

    fn check_connected(&self) -> Result<()> {
        let mut seen = vec![false; self.nodes.len()];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        while let Some(n) = queue.pop_front() {
            for &ei in &self.incident[n] {
                let other = self.node_index[&self.edges[ei].other_end(self.nodes[n].id)];
                if !seen[other] {
                    seen[other] = true;
                    queue.push_back(other);
                }
            }
        }
        match seen.iter().position(|s| !s) {
            None => Ok(()),
            Some(i) => Err(Error::Disconnected { root: self.nodes[0].id, unreached: self.nodes[i].id }),
        }
    }

    pub fn nodes(&self) -> &[Node<T>] {
        &self.nodes
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn node(&self, id: NodeId) -> Result<&Node<T>> {
        self.node_index.get(&id).map(|&i| &self.nodes[i]).ok_or(Error::UnknownNode(id))
    }

    pub fn edge(&self, id: EdgeId) -> Result<&Edge> {
        self.edge_index.get(&id).map(|&i| &self.edges[i]).ok_or(Error::UnknownEdge(id))
    }

    pub fn node_position(&self, id: NodeId) -> Option<usize> {
        self.node_index.get(&id).copied()
    }

    pub fn edge_position(&self, id: EdgeId) -> Option<usize> {
        self.edge_index.get(&id).copied()
    }

    /// Bars touching `node`, in input order.
    pub fn incident_edges(&self, node: NodeId) -> Result<impl Iterator<Item = &Edge> + '_> {
        let i = self.node_position(node).ok_or(Error::UnknownNode(node))?;
        Ok(self.incident[i].iter().map(move |&ei| &self.edges[ei]))
    }

    /// Endpoint positions `(tail, head)` of a bar.
    pub fn bar_ends(&self, id: EdgeId) -> Result<(Vector3<T>, Vector3<T>)> {
        let e = self.edge(id)?;
        Ok((self.node(e.tail)?.position, self.node(e.head)?.position))
    }

    /// Same topology with positions converted by `f`.
    pub fn map_positions<U: Coord>(&self, f: impl Fn(T) -> U) -> FrameGraph<U> {
        FrameGraph {
            nodes: self
                .nodes
                .iter()
                .map(|n| Node { id: n.id, position: n.position.map(&f) })
                .collect(),
            edges: self.edges.clone(),
            node_index: self.node_index.clone(),
            edge_index: self.edge_index.clone(),
            incident: self.incident.clone(),
        }
    }
}

/// Formal integer sum over keys. Zero coefficients are never stored, so
/// derived equality ignores them.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Chain<K: Ord> {
    coeffs: BTreeMap<K, i64>,
}

pub type Chain0 = Chain<NodeId>;
pub type Chain1 = Chain<EdgeId>;

impl<K: Ord + Copy> Default for Chain<K> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<K: Ord + Copy> Chain<K> {
    pub fn zero() -> Self {
        Self { coeffs: BTreeMap::new() }
    }

    pub fn single(key: K, coeff: i64) -> Self {
        Self::from_terms([(key, coeff)])
    }

    /// Sums repeated keys; panics on overflow, see [`Chain::checked_add`].
    pub fn from_terms(terms: impl IntoIterator<Item = (K, i64)>) -> Self {
        let mut c = Self::zero();
        for (k, v) in terms {
            c.add_term(k, v).expect("chain coefficient overflow");
        }
        c
    }

    fn add_term(&mut self, key: K, coeff: i64) -> Result<()> {
        if coeff == 0 {
            return Ok(());
        }
        let slot = self.coeffs.entry(key).or_insert(0);
        *slot = slot.checked_add(coeff).ok_or(Error::Overflow)?;
        if *slot == 0 {
            self.coeffs.remove(&key);
        }
        Ok(())
    }

    pub fn coeff(&self, key: K) -> i64 {
        self.coeffs.get(&key).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Nonzero terms in key order.
    pub fn terms(&self) -> impl Iterator<Item = (K, i64)> + '_ {
        self.coeffs.iter().map(|(&k, &v)| (k, v))
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        let mut out = self.clone();
        for (k, v) in other.terms() {
            out.add_term(k, v)?;
        }
        Ok(out)
    }

    pub fn checked_scale(&self, k: i64) -> Result<Self> {
        let mut out = Self::zero();
        for (key, v) in self.terms() {
            out.add_term(key, v.checked_mul(k).ok_or(Error::Overflow)?)?;
        }
        Ok(out)
    }
}

/// Coefficient-wise sum of two chains.
pub fn chain_add<K: Ord + Copy>(a: &Chain<K>, b: &Chain<K>) -> Chain<K> {
    a.checked_add(b).expect("chain coefficient overflow")
}

pub fn chain_scale<K: Ord + Copy>(k: i64, a: &Chain<K>) -> Chain<K> {
    a.checked_scale(k).expect("chain coefficient overflow")
}

impl<K: Ord + Copy> Add for &Chain<K> {
    type Output = Chain<K>;
    fn add(self, rhs: Self) -> Chain<K> {
        chain_add(self, rhs)
    }
}

impl<K: Ord + Copy> Sub for &Chain<K> {
    type Output = Chain<K>;
    fn sub(self, rhs: Self) -> Chain<K> {
        chain_add(self, &chain_scale(-1, rhs))
    }
}

impl<K: Ord + Copy> Neg for &Chain<K> {
    type Output = Chain<K>;
    fn neg(self) -> Chain<K> {
        chain_scale(-1, self)
    }
}

impl<K: Ord + Copy + fmt::Display> fmt::Display for Chain<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (k, v)) in self.terms().enumerate() {
            let sign = match (i, v < 0) {
                (0, false) => "",
                (0, true) => "-",
                (_, false) => " + ",
                (_, true) => " - ",
            };
            match v.unsigned_abs() {
                1 => write!(f, "{sign}{k}")?,
                n => write!(f, "{sign}{n}{k}")?,
            }
        }
        Ok(())
    }
}

/// Boundary of a 1-chain: every bar contributes `coeff * (head - tail)`.
pub fn boundary<T: Coord>(c: &Chain1, g: &FrameGraph<T>) -> Result<Chain0> {
    let mut out = Chain0::zero();
    for (id, k) in c.terms() {
        let e = g.edge(id)?;
        out.add_term(e.head, k)?;
        out.add_term(e.tail, k.checked_neg().ok_or(Error::Overflow)?)?;
    }
    Ok(out)
}

pub fn is_cycle<T: Coord>(c: &Chain1, g: &FrameGraph<T>) -> Result<bool> {
    Ok(boundary(c, g)?.is_zero())
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    pub(crate) fn complete_graph(n: u32) -> FrameGraph<f64> {
        let nodes = (0..n)
            .map(|i| Node {
                id: NodeId(i),
                position: Vector3::new(f64::from(i), f64::from(i * i), f64::from(i * i * i)),
            })
            .collect();
        let mut edges = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                edges.push(Edge::new(EdgeId(edges.len() as u32), NodeId(a), NodeId(b)));
            }
        }
        FrameGraph::new(nodes, edges).unwrap()
    }

    fn k5_edge(g: &FrameGraph<f64>, a: u32, b: u32) -> EdgeId {
        g.edges().iter().find(|e| e.tail == NodeId(a) && e.head == NodeId(b)).unwrap().id
    }

    #[test]
    fn boundary_of_single_edge_is_head_minus_tail() {
        let g = complete_graph(2);
        let d = boundary(&Chain1::single(EdgeId(0), 1), &g).unwrap();
        assert_eq!(d, Chain0::from_terms([(NodeId(1), 1), (NodeId(0), -1)]));
        assert!(!is_cycle(&Chain1::single(EdgeId(0), 1), &g).unwrap());
    }

    #[test]
    fn zero_chain_has_zero_boundary() {
        let g = complete_graph(5);
        assert!(boundary(&Chain1::zero(), &g).unwrap().is_zero());
    }

    #[test]
    fn triangles_are_cycles_even_when_not_a_single_walk() {
        let g = complete_graph(5);
        let t1 = Chain1::from_terms([(k5_edge(&g, 0, 1), 1), (k5_edge(&g, 1, 2), 1), (k5_edge(&g, 0, 2), -1)]);
        assert!(boundary(&t1, &g).unwrap().is_zero());
        let t2 = Chain1::from_terms([(k5_edge(&g, 2, 3), 1), (k5_edge(&g, 3, 4), 1), (k5_edge(&g, 2, 4), -1)]);
        assert!(is_cycle(&(&t1 + &t2), &g).unwrap());
    }

    #[test]
    fn unknown_edge_is_an_input_error() {
        let g = complete_graph(3);
        let err = boundary(&Chain1::single(EdgeId(99), 1), &g).unwrap_err();
        assert!(matches!(err, Error::UnknownEdge(EdgeId(99))));
    }

    #[test]
    fn chain_arithmetic() {
        let (a, b, d) = (EdgeId(0), EdgeId(1), EdgeId(3));
        let x = Chain1::from_terms([(a, 1), (b, 1)]);
        let y = Chain1::from_terms([(b, 1), (d, -1)]);
        assert_eq!(&x + &y, Chain1::from_terms([(a, 1), (b, 2), (d, -1)]));
        assert_eq!(&x + &y, &y + &x);
        assert!(chain_add(&x, &chain_scale(-1, &x)).is_zero());
        assert!(chain_scale(0, &x).is_zero());
        assert_eq!(Chain1::from_terms([(a, 3), (a, -3)]), Chain1::zero());
        assert_eq!(format!("{}", Chain1::from_terms([(a, 1), (b, 2), (d, -1)])), "b0 + 2b1 - b3");
    }

    #[test]
    fn overflow_is_detected() {
        let x = Chain1::single(EdgeId(0), i64::MAX);
        assert!(matches!(x.checked_add(&x), Err(Error::Overflow)));
        assert!(matches!(x.checked_scale(2), Err(Error::Overflow)));
    }

    #[test]
    fn undirected_bars_point_to_the_higher_id() {
        let e = Edge::undirected(EdgeId(0), NodeId(7), NodeId(2));
        assert_eq!((e.tail, e.head), (NodeId(2), NodeId(7)));
    }

    #[test]
    fn validation_errors() {
        let node = |i: u32| Node { id: NodeId(i), position: Vector3::new(f64::from(i), 0.0, 0.0) };
        let dup = FrameGraph::new(vec![node(0), node(0)], vec![]);
        assert!(matches!(dup, Err(Error::DuplicateNode(NodeId(0)))));
        let dangling = FrameGraph::new(vec![node(0), node(1)], vec![Edge::new(EdgeId(4), NodeId(0), NodeId(9))]);
        assert!(matches!(dangling, Err(Error::UnknownNodeRef { edge: EdgeId(4), node: NodeId(9) })));
        let self_loop = FrameGraph::new(vec![node(0)], vec![Edge::new(EdgeId(0), NodeId(0), NodeId(0))]);
        assert!(matches!(self_loop, Err(Error::SelfLoop(EdgeId(0)))));
        let split = FrameGraph::new(
            vec![node(0), node(1), node(2), node(3)],
            vec![Edge::new(EdgeId(0), NodeId(0), NodeId(1)), Edge::new(EdgeId(1), NodeId(2), NodeId(3))],
        );
        assert!(matches!(split, Err(Error::Disconnected { .. })));
        let parallel = FrameGraph::new(
            vec![node(0), node(1)],
            vec![Edge::new(EdgeId(0), NodeId(0), NodeId(1)), Edge::new(EdgeId(1), NodeId(1), NodeId(0))],
        );
        assert!(parallel.is_ok());
    }
}
