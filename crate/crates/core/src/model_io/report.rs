//! Analysis reports and self-stress state files.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::axial_oracle::{AxialForceVector, MaxwellCalladine, SingularAnalysis};
use crate::chain::{EdgeId, FrameGraph, NodeId};
use crate::cycle_basis::CycleBasis;
use crate::error::{Error, Result};
use crate::self_stress::{bar_resultants, is_axial, residual_from_bars, selfstress_dimension, SelfStressState};
use crate::wedge::{force_of, moment_of, Bivector6};

pub const REPORT_FORMAT: &str = "homstat-report/1";
pub const STATE_FORMAT: &str = "homstat-state/1";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Conventions {
    pub force: String,
    pub moment_reference: String,
    pub bar_direction: String,
    pub bivector_components: [String; 6],
}

impl Default for Conventions {
    fn default() -> Self {
        Self {
            force: "tension-positive".into(),
            moment_reference: "origin".into(),
            bar_direction: "tail-to-head".into(),
            bivector_components: ["jk", "ki", "ij", "ih", "jh", "kh"].map(String::from),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Counts {
    pub nodes: usize,
    pub bars: usize,
    pub cycles: usize,
    pub selfstress_dimension: usize,
    pub rank: usize,
    pub s: i64,
    pub m: i64,
    /// Smallest singular value of the equilibrium matrix, over all bars.
    pub sigma_min: f64,
    pub sigma_max: f64,
    pub rank_tol: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TreeReport {
    pub root: NodeId,
    pub bars: Vec<EdgeId>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CycleTerm {
    pub bar: EdgeId,
    pub coeff: i64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CycleReport {
    pub generator: EdgeId,
    pub terms: Vec<CycleTerm>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BarReport {
    pub id: EdgeId,
    pub tail: NodeId,
    pub head: NodeId,
    pub in_tree: bool,
    pub bivector: [f64; 6],
    pub force: [f64; 3],
    pub moment: [f64; 3],
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NodeReport {
    pub id: NodeId,
    pub force: [f64; 3],
    pub moment: [f64; 3],
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AxialRow {
    pub bar: EdgeId,
    pub axial_force: f64,
    pub parallel_error: f64,
    pub moment_error: f64,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OracleForce {
    pub bar: EdgeId,
    pub force: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub format: String,
    pub conventions: Conventions,
    pub counts: Counts,
    pub tree: TreeReport,
    pub cycles: Vec<CycleReport>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub oracle_forces: Vec<OracleForce>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub bars: Vec<BarReport>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub nodes: Vec<NodeReport>,
    /// Largest node residual norm divided by the largest bar resultant norm.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_relative_residual: Option<f64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub axial: Vec<AxialRow>,
}

fn arr3(v: &nalgebra::Vector3<f64>) -> [f64; 3] {
    [v.x, v.y, v.z]
}

impl AnalysisReport {
    /// Counts, spanning tree and cycle basis.
    pub fn structure(g: &FrameGraph<f64>, basis: &CycleBasis, svd: &SingularAnalysis<f64>) -> Self {
        let mc = MaxwellCalladine::from_rank(g.node_count(), g.edge_count(), svd.rank);
        let counts = Counts {
            nodes: g.node_count(),
            bars: g.edge_count(),
            cycles: basis.len(),
            selfstress_dimension: selfstress_dimension(g),
            rank: mc.rank,
            s: mc.s,
            m: mc.m,
            sigma_min: svd.singular_values.last().copied().unwrap_or(0.0),
            sigma_max: svd.largest(),
            rank_tol: svd.tol,
        };
        let cycles = basis
            .cycles
            .iter()
            .map(|c| CycleReport {
                generator: c.generator,
                terms: c.chain.terms().map(|(bar, coeff)| CycleTerm { bar, coeff }).collect(),
            })
            .collect();
        Self {
            format: REPORT_FORMAT.into(),
            conventions: Conventions::default(),
            counts,
            tree: TreeReport { root: basis.tree.root, bars: basis.tree.edges.iter().copied().collect() },
            cycles,
            oracle_forces: Vec::new(),
            bars: Vec::new(),
            nodes: Vec::new(),
            max_relative_residual: None,
            axial: Vec::new(),
        }
    }

    pub fn with_oracle_forces(mut self, q: &AxialForceVector<f64>) -> Self {
        self.oracle_forces = q.forces.iter().map(|(&bar, &force)| OracleForce { bar, force }).collect();
        self
    }

    /// Per-bar resultants, node residuals and axial checks for a state.
    pub fn with_state(self, g: &FrameGraph<f64>, basis: &CycleBasis, s: &SelfStressState<f64>, tol: f64) -> Result<Self> {
        let bars: BTreeMap<_, _> = bar_resultants(s, g, basis)?.into_iter().map(|r| (r.bar, r.bivector)).collect();
        let mut out = self.with_bar_resultants(g, basis, &bars)?;
        out.axial = is_axial(s, g, basis, tol)?
            .bars
            .into_iter()
            .map(|c| AxialRow {
                bar: c.bar,
                axial_force: c.axial_force,
                parallel_error: c.parallel_error,
                moment_error: c.moment_error,
                pass: c.passes,
            })
            .collect();
        Ok(out)
    }

    /// Node residuals from explicit bar resultants, which need not come from
    /// a cycle state.
    pub fn with_bar_resultants(
        mut self,
        g: &FrameGraph<f64>,
        basis: &CycleBasis,
        bars: &BTreeMap<EdgeId, Bivector6<f64>>,
    ) -> Result<Self> {
        self.bars = g
            .edges()
            .iter()
            .map(|e| {
                let b = bars.get(&e.id).copied().unwrap_or_else(Bivector6::zero);
                BarReport {
                    id: e.id,
                    tail: e.tail,
                    head: e.head,
                    in_tree: basis.tree.contains(e.id),
                    bivector: b.components(),
                    force: arr3(&force_of(&b)),
                    moment: arr3(&moment_of(&b)),
                }
            })
            .collect();
        let residuals = g.nodes().iter().map(|n| residual_from_bars(n.id, g, bars)).collect::<Result<Vec<_>>>()?;
        let scale = bars.values().map(|b| b.norm()).fold(0.0, f64::max);
        let worst = residuals.iter().map(|r| r.force_norm().max(r.moment_norm())).fold(0.0, f64::max);
        self.max_relative_residual = Some(if scale > 0.0 { worst / scale } else { worst });
        self.nodes = residuals
            .iter()
            .map(|r| NodeReport { id: r.node, force: arr3(&r.force), moment: arr3(&r.moment) })
            .collect();
        Ok(self)
    }

    pub fn all_axial(&self) -> bool {
        !self.axial.is_empty() && self.axial.iter().all(|a| a.pass)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports always serialise");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let c = &self.counts;
        let mut out = String::new();
        let _ = writeln!(out, "nodes {}  bars {}  cycles {}  self-stress dimension {}", c.nodes, c.bars, c.cycles, c.selfstress_dimension);
        let _ = writeln!(out, "rank {}  s {}  m {}  sigma_min {:.6e}  sigma_max {:.6e}", c.rank, c.s, c.m, c.sigma_min, c.sigma_max);
        let tree: Vec<String> = self.tree.bars.iter().map(ToString::to_string).collect();
        let _ = writeln!(out, "tree from {}: {}", self.tree.root, tree.join(" "));
        for cycle in &self.cycles {
            let terms: Vec<String> = cycle.terms.iter().map(|t| format!("{:+}{}", t.coeff, t.bar)).collect();
            let _ = writeln!(out, "cycle {}: {}", cycle.generator, terms.join(" "));
        }
        for q in &self.oracle_forces {
            let _ = writeln!(out, "oracle {} {:+.9e}", q.bar, q.force);
        }
        for b in &self.bars {
            let [x, y, z] = b.force;
            let [mx, my, mz] = b.moment;
            let _ = writeln!(out, "bar {} F ({x:+.6e} {y:+.6e} {z:+.6e}) M ({mx:+.6e} {my:+.6e} {mz:+.6e})", b.id);
        }
        if let Some(r) = self.max_relative_residual {
            let _ = writeln!(out, "max relative node residual {r:.3e}");
        }
        for a in &self.axial {
            let verdict = if a.pass { "axial" } else { "NOT axial" };
            let _ = writeln!(out, "{} {verdict} q {:+.9e} (parallel {:.1e}, moment {:.1e})", a.bar, a.axial_force, a.parallel_error, a.moment_error);
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CycleEntry {
    pub generator: EdgeId,
    pub bivector: [f64; 6],
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BarEntry {
    pub bar: EdgeId,
    pub bivector: [f64; 6],
}

/// A state of self-stress on disk: either one bivector per basis cycle,
/// keyed by generator, or raw per-bar resultants. Components are in the
/// order `jk ki ij ih jh kh`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StateDocument {
    pub format: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub cycles: Vec<CycleEntry>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub bars: Vec<BarEntry>,
    #[serde(flatten)]
    pub extra: Map<String, Value>,
}

impl StateDocument {
    pub fn from_state(s: &SelfStressState<f64>) -> Self {
        Self {
            format: STATE_FORMAT.into(),
            cycles: s.resultants.iter().map(|(&generator, b)| CycleEntry { generator, bivector: b.components() }).collect(),
            bars: Vec::new(),
            extra: Map::new(),
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let doc: Self = serde_json::from_str(text)?;
        if doc.format != STATE_FORMAT {
            return Err(Error::Document(format!("unsupported format {:?}, expected {STATE_FORMAT:?}", doc.format)));
        }
        if !doc.cycles.is_empty() && !doc.bars.is_empty() {
            return Err(Error::Document("a state gives either cycles or bars, not both".into()));
        }
        Ok(doc)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("states always serialise");
        s.push('\n');
        s
    }

    pub fn is_per_bar(&self) -> bool {
        !self.bars.is_empty()
    }

    pub fn to_state(&self, basis: &CycleBasis) -> Result<SelfStressState<f64>> {
        if self.is_per_bar() {
            return Err(Error::Document("state lists bar resultants, not cycle resultants".into()));
        }
        let s = SelfStressState {
            resultants: self.cycles.iter().map(|c| (c.generator, Bivector6::from_components(c.bivector))).collect(),
        };
        if let Some(extra) = s.resultants.keys().find(|k| basis.cycle(**k).is_none()) {
            return Err(Error::Document(format!("no basis cycle is generated by bar {extra}")));
        }
        s.check_complete(basis)?;
        Ok(s)
    }

    pub fn bar_resultants(&self) -> BTreeMap<EdgeId, Bivector6<f64>> {
        self.bars.iter().map(|b| (b.bar, Bivector6::from_components(b.bivector))).collect()
    }
}
