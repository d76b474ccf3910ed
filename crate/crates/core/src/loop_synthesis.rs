//! Explicit dual-loop geometry for prescribed bivectors.
//!
//! Any bivector can be realised as a formal sum of at most six axis-aligned
//! rectangles, one per nonzero component. Axial resultants (force along the
//! bar, moment `r x F`) are simple and are realised by a single flat
//! triangle perpendicular to the bar whose `h` coordinates carry the moment.

use nalgebra::Vector3;

use crate::chain::{EdgeId, FrameGraph};
use crate::cycle_basis::CycleBasis;
use crate::error::{Error, Result};
use crate::scalar::{Coord, Real};
use crate::self_stress::{bar_resultants, SelfStressState};
use crate::wedge::{force_of, moment_of, Bivector6, DualChain, LoopPath, Point4, PLANES};

fn axis_offset<T: Coord>(axis: usize, len: T) -> Point4<T> {
    let z = T::zero();
    match axis {
        0 => Point4::new(len, z, z, z),
        1 => Point4::new(z, len, z, z),
        2 => Point4::new(z, z, len, z),
        _ => Point4::new(z, z, z, len),
    }
}

/// One rectangle per nonzero component, each with a corner at `anchor`, a
/// unit side along the second axis of its plane and a signed side equal to
/// the component along the first.
pub fn synthesize_chain<T: Coord>(target: &Bivector6<T>, anchor: Point4<T>) -> DualChain<T> {
    let mut chain = DualChain::new();
    for (&value, &(a, b)) in target.components().iter().zip(PLANES.iter()) {
        if value.is_zero() {
            continue;
        }
        let side = axis_offset(a, value);
        let unit = axis_offset(b, T::one());
        let rect = LoopPath::new(vec![anchor, anchor + side, anchor + side + unit, anchor + unit])
            .expect("rectangle with nonzero sides");
        chain.push(1, rect);
    }
    chain
}

/// Orthonormal pair `(e1, e2)` spanning the plane normal to the unit vector
/// `n`, with `e1 x e2 = n`. `e1` is the lowest-index coordinate axis whose
/// projection into the plane is not short.
pub fn plane_frame<T: Real>(n: &Vector3<T>) -> (Vector3<T>, Vector3<T>) {
    let half = T::lit(0.5);
    let axis = (0..3)
        .map(|k| {
            let mut a = Vector3::zeros();
            a[k] = T::one();
            a - n * n[k]
        })
        .find(|p| p.dot(p) > half)
        .expect("some axis projects with squared length above 1/2");
    let e1 = axis / axis.dot(&axis).sqrt();
    (e1, n.cross(&e1))
}

/// Self-intersecting quadrilateral in the plane normal to `normal` whose two
/// lobes cancel, so every area component is zero.
pub fn zero_bar_loop<T: Real>(normal: &Vector3<T>, anchor: Point4<T>) -> LoopPath<T> {
    let n = normal / normal.dot(normal).sqrt();
    let (e1, e2) = plane_frame(&n);
    let (w1, w2) = (e1 + e2, e1 - e2);
    let at = |w: Vector3<T>| anchor + Point4::from_spatial(&w, T::zero());
    LoopPath::new(vec![at(-w1), at(w1), at(w2), at(-w2)]).expect("bow-tie corners are distinct")
}

/// Dual loop realising one bar resultant.
#[derive(Clone, Debug, PartialEq)]
pub enum DualLoop<T: Coord> {
    /// Flat triangle normal to the bar.
    Triangle(LoopPath<T>),
    /// Zero force and moment.
    ZeroArea(LoopPath<T>),
    /// Rectangles, used when no single planar triangle fits.
    Fallback(DualChain<T>),
}

impl<T: Coord> DualLoop<T> {
    pub fn chain(&self) -> DualChain<T> {
        match self {
            Self::Triangle(p) | Self::ZeroArea(p) => DualChain::single(p.clone()),
            Self::Fallback(c) => c.clone(),
        }
    }

    pub fn is_fallback(&self) -> bool {
        matches!(self, Self::Fallback(_))
    }
}

fn norm<T: Real>(v: &Vector3<T>) -> T {
    v.dot(v).sqrt()
}

/// Triangle normal to the bar `tail -> head` with spatial area vector `force`
/// and moment components `moment`.
///
/// Placement: equilateral, centroid at the bar midpoint, first vertex along
/// the lowest-index coordinate axis projected into the plane. With an
/// `anchor`, the triangle is translated so its first vertex sits there.
/// Heights are `h = g . v` with `g = F x M / |F|^2`, which gives moment
/// `g x F = M` for any `M` perpendicular to `F`.
pub fn triangle_for_axial<T: Real>(
    tail: &Vector3<T>,
    head: &Vector3<T>,
    force: &Vector3<T>,
    moment: &Vector3<T>,
    tol: T,
    anchor: Option<Point4<T>>,
) -> Result<DualLoop<T>> {
    let d = head - tail;
    let len = norm(&d);
    if len == T::zero() {
        return Err(Error::NonAxial("bar has zero length".into()));
    }
    let u = d / len;
    let mid = (tail + head) * T::lit(0.5);
    let f = norm(force);
    let start = anchor.unwrap_or_else(|| Point4::from_spatial(&mid, T::zero()));
    if f == T::zero() {
        return Ok(if norm(moment) <= tol {
            DualLoop::ZeroArea(zero_bar_loop(&u, start))
        } else {
            DualLoop::Fallback(synthesize_chain(&Bivector6::from_force_moment(force, moment), start))
        });
    }
    let off_axis = norm(&force.cross(&u));
    if off_axis > tol * f {
        return Err(Error::NonAxial(format!("force is {off_axis} off the bar axis")));
    }
    let lever = mid.cross(force);
    let moment_scale = norm(moment).max(norm(&mid) * f);
    if norm(&(moment - lever)) > tol * moment_scale {
        return Err(Error::NonAxial("total moment differs from the moment of the bar force".into()));
    }
    let bivector = Bivector6::from_force_moment(force, moment);
    if force.dot(moment).abs() > tol * f * norm(moment) {
        return Ok(DualLoop::Fallback(synthesize_chain(&bivector, start)));
    }

    let n = force / f;
    let (e1, e2) = plane_frame(&n);
    // equilateral triangle of circumradius r has area 3 sqrt(3) r^2 / 4
    let r = (T::lit(4.0) * f / (T::lit(3.0) * T::lit(3.0).sqrt())).sqrt();
    let gradient = force.cross(moment) / (f * f);
    let third = T::lit(2.0 * std::f64::consts::PI / 3.0);
    let offsets: Vec<Vector3<T>> = (0..3)
        .map(|k| {
            let angle = third * T::from_usize(k).expect("small index");
            (e1 * angle.cos() + e2 * angle.sin()) * r
        })
        .collect();
    let vertices = match anchor {
        None => offsets
            .iter()
            .map(|o| {
                let v = mid + o;
                Point4::from_spatial(&v, gradient.dot(&v))
            })
            .collect(),
        Some(a) => offsets
            .iter()
            .map(|o| {
                let rel = o - offsets[0];
                a + Point4::from_spatial(&rel, gradient.dot(&rel))
            })
            .collect(),
    };
    Ok(DualLoop::Triangle(LoopPath::new(vertices)?))
}

/// Which bars get their own dual loop in a synthesised diagram.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BarSelection {
    /// Only the generators of the basis cycles; tree bars stay implicit.
    Generators,
    All,
}

#[derive(Clone, Debug)]
pub struct DiagramOptions<T: Coord> {
    pub bars: BarSelection,
    /// Place the first vertex of every triangle here instead of centring it
    /// on its bar.
    pub shared_anchor: Option<Point4<T>>,
    pub tol: T,
}

#[derive(Clone, Debug)]
pub struct DiagramLoop<T: Coord> {
    pub bar: EdgeId,
    pub bivector: Bivector6<T>,
    pub dual: DualLoop<T>,
}

/// Dual loops for the bars of a state. Bars whose resultant is not axial
/// are realised by rectangle chains anchored at the bar midpoint.
pub fn synthesize_diagram<T: Real>(
    g: &FrameGraph<T>,
    basis: &CycleBasis,
    s: &SelfStressState<T>,
    opts: &DiagramOptions<T>,
) -> Result<Vec<DiagramLoop<T>>> {
    let mut out = Vec::new();
    for r in bar_resultants(s, g, basis)? {
        if opts.bars == BarSelection::Generators && basis.tree.contains(r.bar) {
            continue;
        }
        let (tail, head) = g.bar_ends(r.bar)?;
        let dual = match triangle_for_axial(&tail, &head, &force_of(&r.bivector), &moment_of(&r.bivector), opts.tol, opts.shared_anchor) {
            Ok(d) => d,
            Err(Error::NonAxial(_)) => {
                let mid = (tail + head) * T::lit(0.5);
                let start = opts.shared_anchor.unwrap_or_else(|| Point4::from_spatial(&mid, T::zero()));
                DualLoop::Fallback(synthesize_chain(&r.bivector, start))
            }
            Err(e) => return Err(e),
        };
        out.push(DiagramLoop { bar: r.bar, bivector: r.bivector, dual });
    }
    Ok(out)
}
