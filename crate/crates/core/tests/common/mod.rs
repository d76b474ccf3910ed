#![allow(dead_code)]

use homstat::{Bivector6, CycleBasis, Edge, EdgeId, Frame, FrameGraph, LoopPath, Node, NodeId, Point4, Rational, SelfStressState};
use nalgebra::Vector3;
use rand::seq::SliceRandom;
use rand::Rng;

/// Connected graph with up to `max_nodes` nodes: a random tree plus extra
/// bars, random orientations, ids that are neither contiguous nor in input
/// order, and positions in the unit cube.
pub fn random_frame<R: Rng>(rng: &mut R, max_nodes: usize) -> Frame {
    let v = rng.gen_range(2..=max_nodes);
    let mut ids: Vec<u32> = (0..v as u32).map(|i| 3 * i + 7).collect();
    ids.shuffle(rng);
    let nodes: Vec<Node<f64>> = ids
        .iter()
        .map(|&id| {
            let p = Vector3::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            Node { id: NodeId(id), position: p }
        })
        .collect();
    let mut pairs: Vec<(usize, usize)> = (1..v).map(|i| (rng.gen_range(0..i), i)).collect();
    let extra = rng.gen_range(0..=2 * v);
    for _ in 0..extra {
        let a = rng.gen_range(0..v);
        let b = rng.gen_range(0..v);
        if a != b {
            pairs.push((a, b));
        }
    }
    pairs.shuffle(rng);
    let edges = pairs
        .iter()
        .enumerate()
        .map(|(i, &(a, b))| {
            let (t, h) = if rng.gen_bool(0.5) { (a, b) } else { (b, a) };
            Edge::new(EdgeId(100 + 2 * i as u32), NodeId(ids[t]), NodeId(ids[h]))
        })
        .collect();
    FrameGraph::new(nodes, edges).expect("random frames are connected and loop-free")
}

pub fn random_bivector<R: Rng>(rng: &mut R) -> Bivector6<f64> {
    Bivector6::from_components(std::array::from_fn(|_| rng.gen_range(-1.0..1.0)))
}

pub fn random_state<R: Rng>(rng: &mut R, basis: &CycleBasis) -> SelfStressState<f64> {
    SelfStressState::from_fn(basis, |_| random_bivector(rng))
}

pub fn random_point<R: Rng>(rng: &mut R, scale: f64) -> Point4<f64> {
    Point4::new(
        rng.gen_range(-scale..scale),
        rng.gen_range(-scale..scale),
        rng.gen_range(-scale..scale),
        rng.gen_range(-scale..scale),
    )
}

pub fn random_loop<R: Rng>(rng: &mut R) -> LoopPath<f64> {
    let n = rng.gen_range(3..10);
    LoopPath::new((0..n).map(|_| random_point(rng, 1.0)).collect()).expect("random points are distinct")
}

/// Loop lying in a random 2-plane of 4-space.
pub fn random_planar_loop<R: Rng>(rng: &mut R) -> LoopPath<f64> {
    let origin = random_point(rng, 1.0);
    let (e1, e2) = (random_point(rng, 1.0), random_point(rng, 1.0));
    let n = rng.gen_range(3..9);
    let scaled = |p: Point4<f64>, k: f64| Point4::new(p.x * k, p.y * k, p.z * k, p.h * k);
    LoopPath::new(
        (0..n)
            .map(|_| origin + scaled(e1, rng.gen_range(-1.0..1.0)) + scaled(e2, rng.gen_range(-1.0..1.0)))
            .collect(),
    )
    .expect("random points are distinct")
}

pub fn relative(a: &Bivector6<f64>, b: &Bivector6<f64>) -> f64 {
    let scale = a.norm().max(b.norm());
    if scale == 0.0 {
        0.0
    } else {
        (*a - *b).norm() / scale
    }
}

pub fn rational(n: i64) -> Rational {
    Rational::from_integer(n)
}

/// Rank of an integer matrix by exact fraction-valued elimination.
pub fn exact_rank(rows: &[Vec<i64>]) -> usize {
    exact_null_space(rows).0
}

/// Rank and a basis of the right null space, by reduced row echelon form
/// over the rationals.
pub fn exact_null_space(rows: &[Vec<i64>]) -> (usize, Vec<Vec<Rational>>) {
    let cols = rows.first().map_or(0, Vec::len);
    let mut m: Vec<Vec<Rational>> = rows.iter().map(|r| r.iter().map(|&x| rational(x)).collect()).collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        let Some(p) = (row..m.len()).find(|&r| m[r][col] != rational(0)) else { continue };
        m.swap(row, p);
        let lead = m[row][col];
        for x in m[row].iter_mut() {
            *x /= lead;
        }
        for r in 0..m.len() {
            if r != row && m[r][col] != rational(0) {
                let k = m[r][col];
                let pivot_row = m[row].clone();
                for (x, v) in m[r].iter_mut().zip(pivot_row) {
                    *x -= k * v;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    let null = free
        .iter()
        .map(|&f| {
            let mut v = vec![rational(0); cols];
            v[f] = rational(1);
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -m[r][f];
            }
            v
        })
        .collect();
    (pivots.len(), null)
}

/// Equilibrium matrix of an integer-coordinate frame with unnormalised
/// columns: bar `b` contributes `head - tail` at its head rows and the
/// negative at its tail rows. Its null space holds force densities.
pub fn integer_equilibrium(points: &[[i64; 3]], bars: &[(usize, usize)]) -> Vec<Vec<i64>> {
    let mut rows = vec![vec![0; bars.len()]; 3 * points.len()];
    for (b, &(t, h)) in bars.iter().enumerate() {
        for k in 0..3 {
            let d = points[h][k] - points[t][k];
            rows[3 * h + k][b] += d;
            rows[3 * t + k][b] -= d;
        }
    }
    rows
}
