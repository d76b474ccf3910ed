//! States of self-stress as one bivector per fundamental cycle.
//!
//! Cutting every non-tree bar leaves a statically determinate tree. The six
//! resultant components released at each cut are free, so a state is any
//! assignment of a [`Bivector6`] to each basis cycle, taken on the positive
//! cut face of the generating bar. A bar's resultant is the sum of the
//! bivectors of the cycles through it, weighted by the bar's coefficient in
//! each cycle.
//!
//! Sign conventions:
//! - a bar `tail -> head` with resultant `R` pushes `-R` onto its head node
//!   and `+R` onto its tail node, so pure tension gives `F = q u` with `q > 0`
//!   and `u` the tail-to-head unit vector;
//! - the node residual is `sum(sigma * R)` over incident bars with
//!   `sigma = +1` where the bar ends and `-1` where it starts. Because each
//!   cycle has zero boundary this sum is identically zero.
//! - total moments are taken about the origin; for an axial bar they equal
//!   `r x F` for any point `r` on the bar's line.

use std::collections::BTreeMap;

use nalgebra::Vector3;
use serde::{Deserialize, Serialize};

use crate::chain::{EdgeId, FrameGraph, NodeId};
use crate::cycle_basis::CycleBasis;
use crate::error::{Error, Result};
use crate::scalar::{Coord, Real};
use crate::wedge::{force_of, moment_of, Bivector6};

/// Resultant bivector per basis cycle, keyed by the cycle's generating bar.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SelfStressState<T> {
    pub resultants: BTreeMap<EdgeId, Bivector6<T>>,
}

impl<T: Coord> SelfStressState<T> {
    pub fn zero(basis: &CycleBasis) -> Self {
        Self { resultants: basis.cycles.iter().map(|c| (c.generator, Bivector6::zero())).collect() }
    }

    pub fn from_fn(basis: &CycleBasis, mut f: impl FnMut(EdgeId) -> Bivector6<T>) -> Self {
        Self { resultants: basis.cycles.iter().map(|c| (c.generator, f(c.generator))).collect() }
    }

    fn get(&self, generator: EdgeId) -> Result<Bivector6<T>> {
        self.resultants.get(&generator).copied().ok_or(Error::MissingCycle(generator))
    }

    /// Errors if any basis cycle lacks an entry.
    pub fn check_complete(&self, basis: &CycleBasis) -> Result<()> {
        basis.cycles.iter().try_for_each(|c| self.get(c.generator).map(|_| ()))
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, v) in &other.resultants {
            *out.resultants.entry(*k).or_insert_with(Bivector6::zero) += *v;
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BarResultant<T: Coord> {
    pub bar: EdgeId,
    pub bivector: Bivector6<T>,
    /// Force on the positive cut face.
    pub force: Vector3<T>,
    /// Total moment about the origin.
    pub total_moment: Vector3<T>,
}

impl<T: Coord> BarResultant<T> {
    fn new(bar: EdgeId, bivector: Bivector6<T>) -> Self {
        Self { bar, bivector, force: force_of(&bivector), total_moment: moment_of(&bivector) }
    }
}

pub fn bar_resultant<T: Coord>(
    s: &SelfStressState<T>,
    bar: EdgeId,
    g: &FrameGraph<T>,
    basis: &CycleBasis,
) -> Result<BarResultant<T>> {
    let mut sum = Bivector6::zero();
    for (generator, k) in basis.membership(bar, g)? {
        sum += s.get(generator)? * T::from_i64(k).expect("cycle coefficients are small");
    }
    Ok(BarResultant::new(bar, sum))
}

/// Resultants of every bar, in the graph's bar order. One pass over the
/// cycle chains instead of a membership query per bar.
pub fn bar_resultants<T: Coord>(
    s: &SelfStressState<T>,
    g: &FrameGraph<T>,
    basis: &CycleBasis,
) -> Result<Vec<BarResultant<T>>> {
    let mut sums = vec![Bivector6::zero(); g.edge_count()];
    for cycle in &basis.cycles {
        let r = s.get(cycle.generator)?;
        for (bar, k) in cycle.chain.terms() {
            let i = g.edge_position(bar).ok_or(Error::UnknownEdge(bar))?;
            sums[i] += r * T::from_i64(k).expect("cycle coefficients are small");
        }
    }
    Ok(g.edges().iter().zip(sums).map(|(e, b)| BarResultant::new(e.id, b)).collect())
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NodeResidual<T: Coord> {
    pub node: NodeId,
    pub force: Vector3<T>,
    pub moment: Vector3<T>,
}

impl<T: Real> NodeResidual<T> {
    pub fn force_norm(&self) -> T {
        self.force.dot(&self.force).sqrt()
    }

    pub fn moment_norm(&self) -> T {
        self.moment.dot(&self.moment).sqrt()
    }
}

pub fn node_residual<T: Coord>(
    s: &SelfStressState<T>,
    node: NodeId,
    g: &FrameGraph<T>,
    basis: &CycleBasis,
) -> Result<NodeResidual<T>> {
    let mut bars = BTreeMap::new();
    for e in g.incident_edges(node)? {
        bars.insert(e.id, bar_resultant(s, e.id, g, basis)?.bivector);
    }
    residual_from_bars(node, g, &bars)
}

/// Residual at `node` from explicitly supplied bar bivectors. Bars missing
/// from `bars` count as unloaded.
pub fn residual_from_bars<T: Coord>(
    node: NodeId,
    g: &FrameGraph<T>,
    bars: &BTreeMap<EdgeId, Bivector6<T>>,
) -> Result<NodeResidual<T>> {
    let mut sum = Bivector6::zero();
    for e in g.incident_edges(node)? {
        if let Some(b) = bars.get(&e.id) {
            sum += *b * T::from_i64(e.incidence(node)).expect("incidence is +-1");
        }
    }
    Ok(NodeResidual { node, force: force_of(&sum), moment: moment_of(&sum) })
}

/// Residuals at every node, in the graph's node order.
pub fn node_residuals<T: Coord>(
    s: &SelfStressState<T>,
    g: &FrameGraph<T>,
    basis: &CycleBasis,
) -> Result<Vec<NodeResidual<T>>> {
    let bars: BTreeMap<_, _> = bar_resultants(s, g, basis)?.into_iter().map(|r| (r.bar, r.bivector)).collect();
    g.nodes().iter().map(|n| residual_from_bars(n.id, g, &bars)).collect()
}

/// `6 (e - v + 1)` independent self-stresses of a welded frame.
pub fn selfstress_dimension<T: Coord>(g: &FrameGraph<T>) -> usize {
    6 * (g.edge_count() + 1 - g.node_count())
}

#[derive(Clone, Debug, PartialEq)]
pub struct AxialCheck<T> {
    pub bar: EdgeId,
    /// `F . u`, positive in tension.
    pub axial_force: T,
    /// `|F x u|` relative to the largest bar force.
    pub parallel_error: T,
    /// `|M - r x F|` relative to the largest moment scale, `r` the midpoint.
    pub moment_error: T,
    pub passes: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct AxialReport<T> {
    pub bars: Vec<AxialCheck<T>>,
}

impl<T> AxialReport<T> {
    pub fn all_pass(&self) -> bool {
        self.bars.iter().all(|b| b.passes)
    }
}

/// Unit tail-to-head direction and midpoint of a bar.
pub fn bar_axis<T: Real>(g: &FrameGraph<T>, bar: EdgeId) -> Result<(Vector3<T>, Vector3<T>)> {
    let (tail, head) = g.bar_ends(bar)?;
    let d = head - tail;
    let len = d.dot(&d).sqrt();
    if len == T::zero() {
        return Err(Error::ZeroLengthBar(bar));
    }
    Ok((d / len, (tail + head) * T::lit(0.5)))
}

fn norm<T: Real>(v: &Vector3<T>) -> T {
    v.dot(v).sqrt()
}

/// A bar is axial when its force is parallel to it and its total moment is
/// just the moment of that force about the origin (no bending or torsion).
pub fn is_axial<T: Real>(
    s: &SelfStressState<T>,
    g: &FrameGraph<T>,
    basis: &CycleBasis,
    tol: T,
) -> Result<AxialReport<T>> {
    let resultants = bar_resultants(s, g, basis)?;
    let axes = g.edges().iter().map(|e| bar_axis(g, e.id)).collect::<Result<Vec<_>>>()?;
    let mut f_scale = T::zero();
    let mut m_scale = T::zero();
    for (r, (_, mid)) in resultants.iter().zip(&axes) {
        f_scale = f_scale.max(norm(&r.force));
        m_scale = m_scale.max(norm(&r.total_moment)).max(norm(mid) * norm(&r.force));
    }
    let relative = |x: T, scale: T| if scale > T::zero() { x / scale } else { x };
    let bars = resultants
        .iter()
        .zip(&axes)
        .map(|(r, (u, mid))| {
            let parallel_error = relative(norm(&r.force.cross(u)), f_scale);
            let moment_error = relative(norm(&(r.total_moment - mid.cross(&r.force))), m_scale);
            AxialCheck {
                bar: r.bar,
                axial_force: r.force.dot(u),
                parallel_error,
                moment_error,
                passes: parallel_error <= tol && moment_error <= tol,
            }
        })
        .collect();
    Ok(AxialReport { bars })
}
