//! Built-in example structures.

use std::f64::consts::PI;

use nalgebra::Vector3;
use serde_json::json;

use super::document::StructureDocument;
use crate::axial_oracle::analyze;
use crate::error::{Error, Result};

/// Complete graph on five nodes. Node 0 is `center`, nodes 1 to 4 are
/// `outer`. The four spokes from the center come first, so with the default
/// tree root they form the spanning tree.
pub fn generate_k5(outer: [Vector3<f64>; 4], center: Vector3<f64>) -> Result<StructureDocument> {
    let points: Vec<Vector3<f64>> = std::iter::once(center).chain(outer).collect();
    for (i, a) in points.iter().enumerate() {
        if points[..i].iter().any(|b| b == a) {
            return Err(Error::Document(format!("k5 node {i} coincides with an earlier node")));
        }
    }
    let nodes = points
        .iter()
        .enumerate()
        .map(|(i, p)| StructureDocument::node(i as u32, *p, Some(if i == 0 { "center" } else { "outer" })))
        .collect();
    let mut bars = Vec::new();
    for k in 1..5 {
        bars.push(StructureDocument::bar(bars.len() as u32, 0, k, Some("spoke")));
    }
    for a in 1..5 {
        for b in a + 1..5 {
            bars.push(StructureDocument::bar(bars.len() as u32, a, b, Some("outer")));
        }
    }
    let mut doc = StructureDocument::new(nodes, bars);
    doc.metadata.insert("generator".into(), json!("k5"));
    Ok(doc)
}

/// Regular tetrahedron with unit circumradius around the origin, plus
/// `center`.
pub fn regular_k5(center: Vector3<f64>) -> StructureDocument {
    let s = 1.0 / 3f64.sqrt();
    let outer = [
        Vector3::new(s, s, s),
        Vector3::new(s, -s, -s),
        Vector3::new(-s, s, -s),
        Vector3::new(-s, -s, s),
    ];
    generate_k5(outer, center).expect("regular tetrahedron vertices are distinct")
}

/// Octahedral three-prism on a cylinder: nodes 0..3 on the bottom ring at
/// `z = -half_height`, nodes 3..6 on the top ring rotated by `twist`
/// radians. Bars in order: bottom triangle, top triangle, near-vertical
/// cables `k -> 3+k`, struts `k -> 3+(k+1)%3`.
pub fn generate_prism(radius: f64, half_height: f64, twist: f64) -> Result<StructureDocument> {
    if !(radius > 0.0 && radius.is_finite()) {
        return Err(Error::Document(format!("prism radius must be positive, got {radius}")));
    }
    if !(half_height > 0.0 && half_height.is_finite() && twist.is_finite()) {
        return Err(Error::Document("prism half-height must be positive and twist finite".into()));
    }
    let ring = |k: u32, offset: f64, z: f64| {
        let a = 2.0 * PI * f64::from(k) / 3.0 + offset;
        Vector3::new(radius * a.cos(), radius * a.sin(), z)
    };
    let mut nodes: Vec<_> = (0..3).map(|k| StructureDocument::node(k, ring(k, 0.0, -half_height), Some("bottom"))).collect();
    nodes.extend((0..3).map(|k| StructureDocument::node(3 + k, ring(k, twist, half_height), Some("top"))));
    let mut bars = Vec::new();
    let mut add = |tail, head, label| bars.push(StructureDocument::bar(bars.len() as u32, tail, head, Some(label)));
    for k in 0..3 {
        add(k, (k + 1) % 3, "cable");
    }
    for k in 0..3 {
        add(3 + k, 3 + (k + 1) % 3, "cable");
    }
    for k in 0..3 {
        add(k, 3 + k, "cable");
    }
    for k in 0..3 {
        add(k, 3 + (k + 1) % 3, "strut");
    }
    let mut doc = StructureDocument::new(nodes, bars);
    doc.metadata.insert("generator".into(), json!("prism"));
    doc.metadata.insert("twist".into(), json!(twist));
    Ok(doc)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TwistSearch {
    pub twist: f64,
    /// Smallest singular value of the equilibrium matrix relative to the
    /// largest, at `twist`.
    pub sigma_ratio: f64,
    pub evaluations: usize,
}

/// Twist in `(0, pi)` at which the prism's equilibrium matrix drops rank.
///
/// A coarse scan of the relative smallest singular value brackets the
/// minimum; the bracket is then shrunk by golden-section steps until it is
/// narrower than `1e-14` radians.
pub fn critical_prism_twist(radius: f64, half_height: f64) -> Result<TwistSearch> {
    let mut evaluations = 0;
    let mut ratio = |t: f64| -> Result<f64> {
        evaluations += 1;
        let g = generate_prism(radius, half_height, t)?.to_graph()?;
        Ok(analyze(&g, 0.0)?.smallest_relative())
    };
    const STEPS: usize = 180;
    let step = PI / STEPS as f64;
    let mut best = (f64::INFINITY, 0);
    for i in 1..STEPS {
        let r = ratio(step * i as f64)?;
        if r < best.0 {
            best = (r, i);
        }
    }
    let (mut lo, mut hi) = (step * (best.1 - 1) as f64, step * (best.1 + 1) as f64);
    let phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut a = hi - phi * (hi - lo);
    let mut b = lo + phi * (hi - lo);
    let (mut fa, mut fb) = (ratio(a)?, ratio(b)?);
    while hi - lo > 1e-14 {
        if fa <= fb {
            hi = b;
            (b, fb) = (a, fa);
            a = hi - phi * (hi - lo);
            fa = ratio(a)?;
        } else {
            lo = a;
            (a, fa) = (b, fb);
            b = lo + phi * (hi - lo);
            fb = ratio(b)?;
        }
    }
    let twist = if fa <= fb { a } else { b };
    let sigma_ratio = ratio(twist)?;
    Ok(TwistSearch { twist, sigma_ratio, evaluations })
}
