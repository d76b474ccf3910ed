//! Pin-jointed truss statics used as an independent oracle.
//!
//! The equilibrium matrix has three rows per node and one column per bar.
//! Its null space is the space of axial self-stresses; its rank gives the
//! Maxwell-Calladine counts `s = e - r` and `m = 3v - 6 - r`. Rank is decided
//! from the singular values with a threshold relative to the largest one.

use std::collections::BTreeMap;

use nalgebra::{DMatrix, RealField};
use num_traits::Float;
use serde::{Deserialize, Serialize};

use crate::chain::{EdgeId, FrameGraph, NodeId};
use crate::cycle_basis::CycleBasis;
use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::self_stress::{bar_axis, SelfStressState};
use crate::wedge::Bivector6;

/// Singular values below this fraction of the largest count as zero.
pub const DEFAULT_RANK_TOL: f64 = 1e-9;

#[derive(Clone, Debug)]
pub struct EquilibriumMatrix<T: Real> {
    /// `3v x e`; rows are `(x, y, z)` per node in graph order.
    pub matrix: DMatrix<T>,
    pub nodes: Vec<NodeId>,
    pub bars: Vec<EdgeId>,
}

/// Axial force per bar, positive in tension.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AxialForceVector<T> {
    pub forces: BTreeMap<EdgeId, T>,
}

impl<T: Real> AxialForceVector<T> {
    pub fn zero<U: Real>(g: &FrameGraph<U>) -> Self {
        Self { forces: g.edges().iter().map(|e| (e.id, T::zero())).collect() }
    }

    pub fn get(&self, bar: EdgeId) -> Result<T> {
        self.forces.get(&bar).copied().ok_or(Error::MissingForce(bar))
    }

    pub fn max_abs(&self) -> T {
        self.forces.values().fold(T::zero(), |acc, q| acc.max(q.abs()))
    }

    pub fn scaled(&self, k: T) -> Self {
        Self { forces: self.forces.iter().map(|(&e, &q)| (e, q * k)).collect() }
    }
}

pub fn equilibrium_matrix<T: Real>(g: &FrameGraph<T>) -> Result<EquilibriumMatrix<T>> {
    let mut matrix = DMatrix::zeros(3 * g.node_count(), g.edge_count());
    for (col, e) in g.edges().iter().enumerate() {
        let (u, _) = bar_axis(g, e.id)?;
        let head = 3 * g.node_position(e.head).expect("validated graph");
        let tail = 3 * g.node_position(e.tail).expect("validated graph");
        for k in 0..3 {
            matrix[(head + k, col)] += u[k];
            matrix[(tail + k, col)] -= u[k];
        }
    }
    Ok(EquilibriumMatrix {
        matrix,
        nodes: g.nodes().iter().map(|n| n.id).collect(),
        bars: g.edges().iter().map(|e| e.id).collect(),
    })
}

impl<T: Real> EquilibriumMatrix<T> {
    /// `A q`, the out-of-balance force at every node.
    pub fn apply(&self, q: &AxialForceVector<T>) -> Result<nalgebra::DVector<T>> {
        let v = nalgebra::DVector::from_iterator(
            self.bars.len(),
            self.bars.iter().map(|&b| q.get(b)).collect::<Result<Vec<_>>>()?,
        );
        Ok(&self.matrix * v)
    }
}

#[derive(Clone, Debug)]
pub struct SingularAnalysis<T: Real> {
    /// Descending.
    pub singular_values: Vec<T>,
    pub rank: usize,
    /// Orthonormal basis of the null space, each vector sign-normalised so
    /// its largest-magnitude entry is positive.
    pub null_basis: Vec<AxialForceVector<T>>,
    pub tol: T,
}

impl<T: Real> SingularAnalysis<T> {
    pub fn largest(&self) -> T {
        self.singular_values.first().copied().unwrap_or_else(T::zero)
    }

    /// Smallest singular value that counts as nonzero.
    pub fn smallest_nonzero(&self) -> Option<T> {
        self.rank.checked_sub(1).map(|i| self.singular_values[i])
    }

    /// Smallest singular value over all bars, relative to the largest.
    pub fn smallest_relative(&self) -> T {
        match (self.singular_values.last(), self.largest()) {
            (Some(&s), big) if big > T::zero() => s / big,
            _ => T::zero(),
        }
    }
}

/// SVD of the equilibrium matrix. Rows are zero-padded up to the bar count
/// so the thin decomposition still returns a full right basis.
pub fn analyze<T: Real + RealField>(g: &FrameGraph<T>, tol: T) -> Result<SingularAnalysis<T>> {
    let eq = equilibrium_matrix(g)?;
    let e = eq.bars.len();
    if e == 0 {
        return Ok(SingularAnalysis { singular_values: Vec::new(), rank: 0, null_basis: Vec::new(), tol });
    }
    let rows = eq.matrix.nrows().max(e);
    let mut padded = DMatrix::zeros(rows, e);
    padded.view_mut((0, 0), (eq.matrix.nrows(), e)).copy_from(&eq.matrix);
    let svd = padded.svd(false, true);
    let v_t = svd.v_t.expect("right singular vectors were requested");

    let mut order: Vec<usize> = (0..svd.singular_values.len()).collect();
    order.sort_by(|&a, &b| {
        svd.singular_values[b].partial_cmp(&svd.singular_values[a]).expect("singular values are finite")
    });
    let singular_values: Vec<T> = order.iter().map(|&i| svd.singular_values[i]).collect();
    let threshold = tol * singular_values[0];
    let rank = singular_values.iter().filter(|&&s| s > threshold && s > T::zero()).count();

    let null_basis = order[rank..]
        .iter()
        .map(|&row| {
            let mut q: Vec<T> = (0..e).map(|c| v_t[(row, c)]).collect();
            let pivot = q.iter().copied().fold(T::zero(), |best, x| {
                if Float::abs(x) > Float::abs(best) {
                    x
                } else {
                    best
                }
            });
            if pivot < T::zero() {
                q.iter_mut().for_each(|x| *x = -*x);
            }
            AxialForceVector { forces: eq.bars.iter().copied().zip(q).collect() }
        })
        .collect();
    Ok(SingularAnalysis { singular_values, rank, null_basis, tol })
}

pub fn axial_selfstress_basis<T: Real + RealField>(g: &FrameGraph<T>, tol: T) -> Result<Vec<AxialForceVector<T>>> {
    Ok(analyze(g, tol)?.null_basis)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MaxwellCalladine {
    /// Independent axial self-stresses.
    pub s: i64,
    /// Mechanisms beyond the six rigid-body motions.
    pub m: i64,
    pub rank: usize,
}

impl MaxwellCalladine {
    pub fn from_rank(v: usize, e: usize, rank: usize) -> Self {
        let r = rank as i64;
        Self { s: e as i64 - r, m: 3 * v as i64 - 6 - r, rank }
    }
}

pub fn maxwell_calladine<T: Real + RealField>(g: &FrameGraph<T>, tol: T) -> Result<MaxwellCalladine> {
    let rank = analyze(g, tol)?.rank;
    Ok(MaxwellCalladine::from_rank(g.node_count(), g.edge_count(), rank))
}

/// `|A q| / |q|`; zero for the zero vector.
pub fn equilibrium_residual<T: Real>(g: &FrameGraph<T>, q: &AxialForceVector<T>) -> Result<T> {
    let eq = equilibrium_matrix(g)?;
    let r = eq.apply(q)?;
    let qn = q.forces.values().fold(T::zero(), |acc, &x| acc + x * x).sqrt();
    let rn = r.iter().fold(T::zero(), |acc, &x| acc + x * x).sqrt();
    Ok(if qn > T::zero() { rn / qn } else { rn })
}

/// Loads each cycle with its generator's axial force: `F = q u` and
/// `M = p x F` with `p` the bar midpoint.
///
/// Only the generators are read from `q`; when `q` is a true self-stress the
/// cycle sums then reproduce `q` on the tree bars as well.
pub fn axial_to_state<T: Real>(
    g: &FrameGraph<T>,
    basis: &CycleBasis,
    q: &AxialForceVector<T>,
    tol: T,
) -> Result<SelfStressState<T>> {
    let residual = equilibrium_residual(g, q)?;
    if residual > tol {
        return Err(Error::NotSelfStress {
            residual: residual.to_f64().unwrap_or(f64::NAN),
            tol: tol.to_f64().unwrap_or(f64::NAN),
        });
    }
    let mut resultants = BTreeMap::new();
    for cycle in &basis.cycles {
        let (u, mid) = bar_axis(g, cycle.generator)?;
        let force = u * q.get(cycle.generator)?;
        resultants.insert(cycle.generator, Bivector6::from_force_moment(&force, &mid.cross(&force)));
    }
    Ok(SelfStressState { resultants })
}

/// Axial force implied by each bar's resultant, `F . u`.
pub fn axial_forces_of<T: Real>(
    g: &FrameGraph<T>,
    basis: &CycleBasis,
    s: &SelfStressState<T>,
) -> Result<AxialForceVector<T>> {
    let mut forces = BTreeMap::new();
    for r in crate::self_stress::bar_resultants(s, g, basis)? {
        let (u, _) = bar_axis(g, r.bar)?;
        forces.insert(r.bar, r.force.dot(&u));
    }
    Ok(AxialForceVector { forces })
}

#[cfg(test)]
mod tests {
    use nalgebra::Vector3;

    use super::*;
    use crate::chain::{Edge, Node};

    fn frame(points: &[[f64; 3]], bars: &[(u32, u32)]) -> FrameGraph<f64> {
        let nodes = points
            .iter()
            .enumerate()
            .map(|(i, p)| Node { id: NodeId(i as u32), position: Vector3::from(*p) })
            .collect();
        let edges = bars.iter().enumerate().map(|(i, &(a, b))| Edge::new(EdgeId(i as u32), NodeId(a), NodeId(b))).collect();
        FrameGraph::new(nodes, edges).unwrap()
    }

    fn tetrahedron() -> FrameGraph<f64> {
        frame(
            &[[0., 0., 0.], [1., 0., 0.], [0., 1., 0.], [0., 0., 1.]],
            &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)],
        )
    }

    #[test]
    fn single_bar_column() {
        let g = frame(&[[0., 0., 0.], [1., 0., 0.]], &[(0, 1)]);
        let a = equilibrium_matrix(&g).unwrap().matrix;
        assert_eq!(a.column(0).as_slice(), &[-1., 0., 0., 1., 0., 0.]);
    }

    #[test]
    fn columns_have_norm_sqrt_two() {
        let a = equilibrium_matrix(&tetrahedron()).unwrap().matrix;
        for c in a.column_iter() {
            assert!((c.norm() - 2f64.sqrt()).abs() < 1e-15);
        }
    }

    #[test]
    fn tetrahedron_is_isostatic() {
        let mc = maxwell_calladine(&tetrahedron(), DEFAULT_RANK_TOL).unwrap();
        assert_eq!(mc, MaxwellCalladine { s: 0, m: 0, rank: 6 });
        assert!(axial_selfstress_basis(&tetrahedron(), DEFAULT_RANK_TOL).unwrap().is_empty());
    }

    #[test]
    fn wide_matrix_null_space_is_complete() {
        // four parallel bars between two nodes: 6 rows, 4 columns, s = 3
        let g = frame(&[[0., 0., 0.], [0., 0., 2.]], &[(0, 1), (0, 1), (1, 0), (0, 1)]);
        let a = analyze(&g, DEFAULT_RANK_TOL).unwrap();
        assert_eq!((a.rank, a.null_basis.len()), (1, 3));
        for q in &a.null_basis {
            assert!(equilibrium_residual(&g, q).unwrap() < 1e-12);
        }
        // many bars on few nodes: 10 parallel bars, 6 rows
        let bars: Vec<(u32, u32)> = (0..10).map(|_| (0, 1)).collect();
        let g = frame(&[[0., 0., 0.], [1., 1., 0.]], &bars);
        assert_eq!(analyze(&g, DEFAULT_RANK_TOL).unwrap().null_basis.len(), 9);
    }

    #[test]
    fn zero_length_bar_is_an_input_error() {
        let g = frame(&[[0., 0., 0.], [0., 0., 0.]], &[(0, 1)]);
        assert!(matches!(equilibrium_matrix(&g), Err(Error::ZeroLengthBar(EdgeId(0)))));
    }

    #[test]
    fn non_self_stress_is_rejected_and_zero_is_accepted() {
        let g = tetrahedron();
        let basis = CycleBasis::new(&g);
        let q = AxialForceVector { forces: g.edges().iter().map(|e| (e.id, 1.0)).collect() };
        assert!(matches!(axial_to_state(&g, &basis, &q, 1e-9), Err(Error::NotSelfStress { .. })));
        let zero = AxialForceVector::<f64>::zero(&g);
        let s = axial_to_state(&g, &basis, &zero, 1e-9).unwrap();
        assert!(s.resultants.values().all(|b| b.is_zero()));
    }

    #[test]
    fn single_precision_rank() {
        let g = tetrahedron().map_positions(|x| x as f32);
        assert_eq!(maxwell_calladine(&g, 1e-5f32).unwrap().rank, 6);
    }
}
