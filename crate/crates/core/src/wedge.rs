//! Loops in the 4D extended stress space `(x, y, z, h)` and their oriented
//! areas.
//!
//! The oriented area of a closed polyline in 4D is a bivector with six
//! components, one per coordinate plane. The three spatial planes carry the
//! force (through the 3D Hodge dual, right-hand rule) and the three planes
//! containing `h` carry the total moment about the origin:
//!
//! ```text
//! force  = (A_jk, A_ki, A_ij)
//! moment = (A_ih, A_jh, A_kh)
//! ```
//!
//! Each component is the shoelace sum of the loop's projection onto that
//! plane, so everything in this module is exact for rational coordinates.

use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use nalgebra::Vector3;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{Coord, Real};

/// A point in the extended stress space; `h` is the stress-function axis.
#[derive(Clone, Copy, Debug, PartialEq, Default, Serialize, Deserialize)]
pub struct Point4<T> {
    pub x: T,
    pub y: T,
    pub z: T,
    pub h: T,
}

impl<T: Coord> Point4<T> {
    pub fn new(x: T, y: T, z: T, h: T) -> Self {
        Self { x, y, z, h }
    }

    pub fn origin() -> Self {
        Self::new(T::zero(), T::zero(), T::zero(), T::zero())
    }

    pub fn from_spatial(p: &Vector3<T>, h: T) -> Self {
        Self::new(p.x, p.y, p.z, h)
    }

    pub fn spatial(&self) -> Vector3<T> {
        Vector3::new(self.x, self.y, self.z)
    }

    fn coord(&self, axis: usize) -> T {
        match axis {
            0 => self.x,
            1 => self.y,
            2 => self.z,
            _ => self.h,
        }
    }
}

impl<T: Coord> Add for Point4<T> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.x + o.x, self.y + o.y, self.z + o.z, self.h + o.h)
    }
}

impl<T: Coord> Sub for Point4<T> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.x - o.x, self.y - o.y, self.z - o.z, self.h - o.h)
    }
}

/// The six coordinate planes, as ordered axis pairs with `x=0, y=1, z=2, h=3`.
pub const PLANES: [(usize, usize); 6] = [(1, 2), (2, 0), (0, 1), (0, 3), (1, 3), (2, 3)];

/// Oriented area of a loop in 4D.
#[derive(Clone, Copy, Debug, PartialEq, Default, Serialize, Deserialize)]
pub struct Bivector6<T> {
    pub jk: T,
    pub ki: T,
    pub ij: T,
    pub ih: T,
    pub jh: T,
    pub kh: T,
}

impl<T: Coord> Bivector6<T> {
    pub fn new(jk: T, ki: T, ij: T, ih: T, jh: T, kh: T) -> Self {
        Self { jk, ki, ij, ih, jh, kh }
    }

    pub fn zero() -> Self {
        Self::from_components([T::zero(); 6])
    }

    /// Components in [`PLANES`] order.
    pub fn components(&self) -> [T; 6] {
        [self.jk, self.ki, self.ij, self.ih, self.jh, self.kh]
    }

    pub fn from_components(c: [T; 6]) -> Self {
        Self::new(c[0], c[1], c[2], c[3], c[4], c[5])
    }

    /// Packs a force and a total moment; inverse of [`force_of`] / [`moment_of`].
    pub fn from_force_moment(force: &Vector3<T>, moment: &Vector3<T>) -> Self {
        Self::new(force.x, force.y, force.z, moment.x, moment.y, moment.z)
    }

    pub fn is_zero(&self) -> bool {
        self.components().iter().all(|c| c.is_zero())
    }

    /// Spatial-by-moment part of `B ∧ B` (up to a factor of two); zero exactly
    /// when the bivector is simple.
    pub fn wedge_self(&self) -> T {
        self.jk * self.ih + self.ki * self.jh + self.ij * self.kh
    }

    pub fn scale(&self, k: T) -> Self {
        Self::from_components(self.components().map(|c| c * k))
    }
}

impl<T: Real> Bivector6<T> {
    /// Euclidean norm over all six components.
    pub fn norm(&self) -> T {
        self.components().iter().fold(T::zero(), |acc, &c| acc + c * c).sqrt()
    }

    pub fn max_abs(&self) -> T {
        self.components().iter().fold(T::zero(), |acc, &c| acc.max(c.abs()))
    }
}

impl<T: Coord> Add for Bivector6<T> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        let (a, b) = (self.components(), o.components());
        Self::from_components(std::array::from_fn(|i| a[i] + b[i]))
    }
}

impl<T: Coord> AddAssign for Bivector6<T> {
    fn add_assign(&mut self, o: Self) {
        *self = *self + o;
    }
}

impl<T: Coord> Sub for Bivector6<T> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self + -o
    }
}

impl<T: Coord> Neg for Bivector6<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Self::from_components(self.components().map(|c| -c))
    }
}

impl<T: Coord> Mul<T> for Bivector6<T> {
    type Output = Self;
    fn mul(self, k: T) -> Self {
        self.scale(k)
    }
}

/// A closed polyline in 4D; the last vertex connects back to the first.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LoopPath<T> {
    vertices: Vec<Point4<T>>,
}

impl<T: Coord> LoopPath<T> {
    /// Requires at least three vertices and no two consecutive equal vertices
    /// (closing edge included).
    pub fn new(vertices: Vec<Point4<T>>) -> Result<Self> {
        if vertices.len() < 3 {
            return Err(Error::InvalidLoop(format!("{} vertices, need at least 3", vertices.len())));
        }
        let n = vertices.len();
        if let Some(i) = (0..n).find(|&i| vertices[i] == vertices[(i + 1) % n]) {
            return Err(Error::InvalidLoop(format!("vertices {i} and {} coincide", (i + 1) % n)));
        }
        Ok(Self { vertices })
    }

    pub fn vertices(&self) -> &[Point4<T>] {
        &self.vertices
    }

    pub fn reversed(&self) -> Self {
        let mut vertices = self.vertices.clone();
        vertices.reverse();
        Self { vertices }
    }

    pub fn translated(&self, by: Point4<T>) -> Self {
        Self { vertices: self.vertices.iter().map(|&p| p + by).collect() }
    }

    /// Same loop starting at vertex `k`.
    pub fn rotated(&self, k: usize) -> Self {
        let mut vertices = self.vertices.clone();
        let n = vertices.len();
        vertices.rotate_left(k % n);
        Self { vertices }
    }
}

/// Shoelace area of every coordinate-plane projection.
///
/// Coordinates are taken relative to the first vertex; the sum is the same
/// as the textbook formula but loses less precision far from the origin.
pub fn loop_area<T: Coord>(p: &LoopPath<T>) -> Bivector6<T> {
    let v = p.vertices();
    let base = v[0];
    let two = T::one() + T::one();
    let mut acc = [T::zero(); 6];
    for w in v[1..].windows(2) {
        let (a, b) = (w[0] - base, w[1] - base);
        for (slot, &(i, j)) in acc.iter_mut().zip(PLANES.iter()) {
            *slot += a.coord(i) * b.coord(j) - a.coord(j) * b.coord(i);
        }
    }
    Bivector6::from_components(acc.map(|c| c / two))
}

/// Integer formal sum of loops.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DualChain<T> {
    pub terms: Vec<(i64, LoopPath<T>)>,
}

impl<T: Coord> Default for DualChain<T> {
    fn default() -> Self {
        Self { terms: Vec::new() }
    }
}

impl<T: Coord> DualChain<T> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn single(path: LoopPath<T>) -> Self {
        Self { terms: vec![(1, path)] }
    }

    pub fn push(&mut self, coeff: i64, path: LoopPath<T>) {
        self.terms.push((coeff, path));
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Concatenation of two formal sums.
    pub fn join(mut self, other: DualChain<T>) -> Self {
        self.terms.extend(other.terms);
        self
    }

    /// Rewrites the chain as one closed loop when every term starts at the
    /// same vertex; the loops are walked one after another through that
    /// shared vertex, so the oriented area is unchanged. Negative
    /// coefficients reverse a loop, and `|k| > 1` repeats it.
    pub fn merge_at_common_vertex(&self) -> Option<LoopPath<T>> {
        let first = self.terms.first()?.1.vertices()[0];
        let mut vertices = Vec::new();
        for (k, path) in &self.terms {
            if path.vertices()[0] != first {
                return None;
            }
            let oriented = if *k < 0 { path.reversed().rotated(path.vertices().len() - 1) } else { path.clone() };
            for _ in 0..k.unsigned_abs() {
                vertices.extend_from_slice(oriented.vertices());
            }
        }
        LoopPath::new(vertices).ok()
    }
}

pub fn chain_area<T: Coord>(c: &DualChain<T>) -> Bivector6<T> {
    c.terms.iter().fold(Bivector6::zero(), |acc, (k, path)| {
        acc + loop_area(path) * T::from_i64(*k).expect("chain coefficient fits the scalar type")
    })
}

/// Force carried by a bivector: the Hodge dual of its spatial part.
pub fn force_of<T: Coord>(b: &Bivector6<T>) -> Vector3<T> {
    Vector3::new(b.jk, b.ki, b.ij)
}

/// Total moment about the origin carried by a bivector.
pub fn moment_of<T: Coord>(b: &Bivector6<T>) -> Vector3<T> {
    Vector3::new(b.ih, b.jh, b.kh)
}

/// Whether `B ∧ B` vanishes, relative to the squared norm of `b`.
/// Only simple bivectors can be realised by a single planar loop.
pub fn is_simple<T: Real>(b: &Bivector6<T>, tol: T) -> bool {
    let scale = b.norm();
    b.wedge_self().abs() <= tol * scale * scale
}
