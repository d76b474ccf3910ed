//! Loop-based graphic statics for 3D rigid-jointed frames.
//!
//! A frame is split into fundamental cycles by a spanning tree. A state of
//! self-stress assigns one 4D bivector (three force and three total-moment
//! components) to each cycle; the resultant in any bar is the signed sum of
//! the bivectors of the cycles passing through it, which makes every node
//! equilibrated by construction. A classical equilibrium-matrix analysis of
//! the pin-jointed truss serves as an independent oracle.
//!
//! The geometry is generic over the scalar type. [`Coord`] covers exact
//! rationals as well as floats; the numerical parts require [`Real`].

pub mod axial_oracle;
pub mod chain;
pub mod cycle_basis;
pub mod error;
pub mod loop_synthesis;
pub mod model_io;
pub mod scalar;
pub mod self_stress;
pub mod wedge;

pub use axial_oracle::{analyze, axial_forces_of, axial_selfstress_basis, axial_to_state, equilibrium_matrix, equilibrium_residual, maxwell_calladine, AxialForceVector, EquilibriumMatrix, MaxwellCalladine, SingularAnalysis, DEFAULT_RANK_TOL};
pub use chain::{boundary, chain_add, chain_scale, is_cycle, Chain0, Chain1, Edge, EdgeId, FrameGraph, Node, NodeId};
pub use cycle_basis::{cycle_membership, fundamental_cycles, spanning_tree, spanning_tree_from, CycleBasis, FundamentalCycle, SpanningTree};
pub use error::{Error, Result};
pub use loop_synthesis::{synthesize_chain, synthesize_diagram, triangle_for_axial, zero_bar_loop, BarSelection, DiagramLoop, DiagramOptions, DualLoop};
pub use scalar::{Coord, Real};
pub use self_stress::{bar_resultant, bar_resultants, is_axial, node_residual, node_residuals, residual_from_bars, selfstress_dimension, AxialCheck, AxialReport, BarResultant, NodeResidual, SelfStressState};
pub use wedge::{chain_area, force_of, is_simple, loop_area, moment_of, Bivector6, DualChain, LoopPath, Point4};

pub type Rational = num_rational::Rational64;

pub type Frame = FrameGraph<f64>;
pub type Point4f = Point4<f64>;
pub type Bivector6f = Bivector6<f64>;
pub type LoopPathf = LoopPath<f64>;
pub type DualChainf = DualChain<f64>;
pub type ExactPoint4 = Point4<Rational>;
pub type ExactBivector6 = Bivector6<Rational>;
