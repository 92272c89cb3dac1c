//! Cube complexes through their 1-skeleton median graphs.
//!
//! Three backends sit behind [`CubeComplex`]: explicit finite graphs, the
//! integer lattices `Z^n` (the standard cubulation of `R^n`) and binary
//! products. Every operation only reads the complex, so a complex can be
//! shared freely between threads once built.

mod cube;
mod finite;
mod vertex;

pub use cube::Cube;
pub use finite::{FiniteComplex, MedianCheck};
pub use vertex::{OrientedEdge, Vertex};

use std::collections::{BTreeSet, VecDeque};

use thiserror::Error;

/// Default cap on the number of vertices materialized by [`CubeComplex::ball`].
pub const DEFAULT_BALL_CAP: usize = 100_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComplexError {
    #[error("{x}, {y}, {z} have {medians} medians")]
    MedianViolation {
        x: String,
        y: String,
        z: String,
        medians: usize,
    },
    #[error("cube enumeration on an infinite backend needs a finite window")]
    WindowRequired,
    #[error("exploration exceeded the cap of {cap} vertices")]
    BudgetExceeded { cap: usize },
    #[error("not a median graph: {0}")]
    NotMedian(String),
    #[error("invalid complex: {0}")]
    Invalid(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Backend {
    Finite,
    Lattice,
    Product,
}

#[derive(Clone, Debug)]
pub enum CubeComplex {
    Finite(FiniteComplex),
    /// The square lattice `Z^rank`.
    Lattice { rank: usize },
    Product(Box<CubeComplex>, Box<CubeComplex>),
}

/// A finite induced subcomplex together with the vertices of the ambient
/// complex it was cut from (`vertices[i]` is local vertex `i`).
#[derive(Clone, Debug)]
pub struct Subcomplex {
    pub complex: FiniteComplex,
    pub vertices: Vec<Vertex>,
}

impl Subcomplex {
    pub fn local(&self, v: &Vertex) -> Option<usize> {
        self.vertices.binary_search(v).ok()
    }
}

impl CubeComplex {
    /// A finite complex, rejected unless it is a median graph.
    pub fn finite(complex: FiniteComplex) -> Result<Self, ComplexError> {
        match complex.verify_median_graph() {
            MedianCheck::Ok => Ok(CubeComplex::Finite(complex)),
            MedianCheck::Disconnected => Err(ComplexError::NotMedian("disconnected".into())),
            MedianCheck::Violation { triple: (x, y, z), medians } => Err(ComplexError::NotMedian(format!(
                "{:?}, {:?}, {:?} have {medians} medians",
                complex.name(x),
                complex.name(y),
                complex.name(z)
            ))),
        }
    }

    /// A finite complex without the median check.
    pub fn finite_unchecked(complex: FiniteComplex) -> Self {
        CubeComplex::Finite(complex)
    }

    pub fn lattice(rank: usize) -> Self {
        assert!(rank >= 1, "lattice rank must be positive");
        CubeComplex::Lattice { rank }
    }

    pub fn product(left: CubeComplex, right: CubeComplex) -> Self {
        CubeComplex::Product(Box::new(left), Box::new(right))
    }

    pub fn backend(&self) -> Backend {
        match self {
            CubeComplex::Finite(_) => Backend::Finite,
            CubeComplex::Lattice { .. } => Backend::Lattice,
            CubeComplex::Product(..) => Backend::Product,
        }
    }

    pub fn as_finite(&self) -> Option<&FiniteComplex> {
        match self {
            CubeComplex::Finite(f) => Some(f),
            _ => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, CubeComplex::Finite(_))
            || matches!(self, CubeComplex::Product(a, b) if a.is_finite() && b.is_finite())
    }

    /// Base vertex: the first finite vertex, the lattice origin, or the pair
    /// of factor origins.
    pub fn origin(&self) -> Vertex {
        match self {
            CubeComplex::Finite(_) => Vertex::Index(0),
            CubeComplex::Lattice { rank } => Vertex::Point(vec![0; *rank]),
            CubeComplex::Product(a, b) => Vertex::pair(a.origin(), b.origin()),
        }
    }

    pub fn contains(&self, v: &Vertex) -> bool {
        match (self, v) {
            (CubeComplex::Finite(f), Vertex::Index(i)) => *i < f.len(),
            (CubeComplex::Lattice { rank }, Vertex::Point(p)) => p.len() == *rank,
            (CubeComplex::Product(a, b), Vertex::Pair(x, y)) => a.contains(x) && b.contains(y),
            _ => false,
        }
    }

    /// Structural equality, used to allow factor swaps in products.
    pub fn same_structure(&self, other: &CubeComplex) -> bool {
        match (self, other) {
            (CubeComplex::Finite(a), CubeComplex::Finite(b)) => a.same_structure(b),
            (CubeComplex::Lattice { rank: r }, CubeComplex::Lattice { rank: s }) => r == s,
            (CubeComplex::Product(a, b), CubeComplex::Product(c, d)) => {
                a.same_structure(c) && b.same_structure(d)
            }
            _ => false,
        }
    }

    /// Human-readable vertex label: the vertex name for finite complexes.
    pub fn label(&self, v: &Vertex) -> String {
        match (self, v) {
            (CubeComplex::Finite(f), Vertex::Index(i)) => f.name(*i).to_string(),
            (CubeComplex::Product(a, b), Vertex::Pair(x, y)) => {
                format!("[{}|{}]", a.label(x), b.label(y))
            }
            (_, v) => v.to_string(),
        }
    }

    /// Neighbours in canonical order.
    pub fn neighbors(&self, v: &Vertex) -> Vec<Vertex> {
        let mut out = match self {
            CubeComplex::Finite(f) => {
                return f.neighbors(v.as_index()).iter().map(|&i| Vertex::Index(i)).collect()
            }
            CubeComplex::Lattice { .. } => {
                let p = v.as_point();
                let mut out = Vec::with_capacity(2 * p.len());
                for axis in 0..p.len() {
                    for step in [-1, 1] {
                        let mut q = p.to_vec();
                        q[axis] += step;
                        out.push(Vertex::Point(q));
                    }
                }
                out
            }
            CubeComplex::Product(a, b) => {
                let (x, y) = v.as_pair();
                let mut out: Vec<Vertex> = a
                    .neighbors(x)
                    .into_iter()
                    .map(|x2| Vertex::pair(x2, y.clone()))
                    .collect();
                out.extend(b.neighbors(y).into_iter().map(|y2| Vertex::pair(x.clone(), y2)));
                out
            }
        };
        out.sort();
        out
    }

    pub fn is_adjacent(&self, x: &Vertex, y: &Vertex) -> bool {
        match self {
            CubeComplex::Finite(f) => f.is_adjacent(x.as_index(), y.as_index()),
            _ => self.distance(x, y) == 1,
        }
    }

    /// Length of a shortest edge path.
    pub fn distance(&self, x: &Vertex, y: &Vertex) -> usize {
        match self {
            CubeComplex::Finite(f) => f.distance(x.as_index(), y.as_index()),
            CubeComplex::Lattice { .. } => x
                .as_point()
                .iter()
                .zip(y.as_point())
                .map(|(a, b)| a.abs_diff(*b) as usize)
                .sum(),
            CubeComplex::Product(a, b) => {
                let (x1, x2) = x.as_pair();
                let (y1, y2) = y.as_pair();
                a.distance(x1, y1) + b.distance(x2, y2)
            }
        }
    }

    /// Maximal cube dimension: computed for finite complexes, structural
    /// otherwise.
    pub fn dimension(&self) -> usize {
        match self {
            CubeComplex::Finite(f) => f.dimension(),
            CubeComplex::Lattice { rank } => *rank,
            CubeComplex::Product(a, b) => a.dimension() + b.dimension(),
        }
    }

    /// The interval `I(x, y)`: vertices on some geodesic from `x` to `y`.
    pub fn interval(&self, x: &Vertex, y: &Vertex) -> BTreeSet<Vertex> {
        let mut seen = BTreeSet::from([x.clone()]);
        let mut queue = VecDeque::from([x.clone()]);
        while let Some(u) = queue.pop_front() {
            let du = self.distance(&u, y);
            for w in self.neighbors(&u) {
                if self.distance(&w, y) + 1 == du && seen.insert(w.clone()) {
                    queue.push_back(w);
                }
            }
        }
        seen
    }

    /// A geodesic from `x` to `y`: each step moves to the canonically
    /// smallest neighbour that is strictly closer to `y`.
    pub fn geodesic(&self, x: &Vertex, y: &Vertex) -> Vec<Vertex> {
        let mut path = vec![x.clone()];
        let mut current = x.clone();
        let mut remaining = self.distance(x, y);
        while remaining > 0 {
            current = self
                .neighbors(&current)
                .into_iter()
                .find(|w| self.distance(w, y) + 1 == remaining)
                .expect("a closer neighbour exists in a connected graph");
            remaining -= 1;
            path.push(current.clone());
        }
        path
    }

    /// The unique vertex on all three pairwise intervals.
    pub fn median(&self, x: &Vertex, y: &Vertex, z: &Vertex) -> Result<Vertex, ComplexError> {
        match self {
            CubeComplex::Finite(f) => {
                let found = f.medians(x.as_index(), y.as_index(), z.as_index());
                if found.len() == 1 {
                    Ok(Vertex::Index(found[0]))
                } else {
                    Err(ComplexError::MedianViolation {
                        x: self.label(x),
                        y: self.label(y),
                        z: self.label(z),
                        medians: found.len(),
                    })
                }
            }
            CubeComplex::Lattice { .. } => {
                let (a, b, c) = (x.as_point(), y.as_point(), z.as_point());
                Ok(Vertex::Point(
                    (0..a.len())
                        .map(|i| {
                            let mut t = [a[i], b[i], c[i]];
                            t.sort_unstable();
                            t[1]
                        })
                        .collect(),
                ))
            }
            CubeComplex::Product(a, b) => {
                let (x1, x2) = x.as_pair();
                let (y1, y2) = y.as_pair();
                let (z1, z2) = z.as_pair();
                Ok(Vertex::pair(a.median(x1, y1, z1)?, b.median(x2, y2, z2)?))
            }
        }
    }

    /// Smallest vertex set containing `points` and closed under intervals.
    pub fn convex_hull<'a>(&self, points: impl IntoIterator<Item = &'a Vertex>) -> BTreeSet<Vertex> {
        let mut hull: BTreeSet<Vertex> = BTreeSet::new();
        let mut pending: Vec<Vertex> = points.into_iter().cloned().collect();
        while let Some(p) = pending.pop() {
            if !hull.insert(p.clone()) {
                continue;
            }
            let members: Vec<Vertex> = hull.iter().cloned().collect();
            for q in &members {
                for w in self.interval(&p, q) {
                    if !hull.contains(&w) {
                        pending.push(w);
                    }
                }
            }
        }
        hull
    }

    /// Vertices within distance `radius` of `center`, grouped by distance
    /// (layer `k` holds the sphere of radius `k` in canonical order).
    pub fn ball_layers(&self, center: &Vertex, radius: usize, cap: usize) -> Result<Vec<Vec<Vertex>>, ComplexError> {
        let mut seen = BTreeSet::from([center.clone()]);
        let mut layers = vec![vec![center.clone()]];
        for _ in 0..radius {
            let mut next = BTreeSet::new();
            for u in layers.last().unwrap() {
                for w in self.neighbors(u) {
                    if !seen.contains(&w) {
                        next.insert(w);
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            seen.extend(next.iter().cloned());
            if seen.len() > cap {
                return Err(ComplexError::BudgetExceeded { cap });
            }
            layers.push(next.into_iter().collect());
        }
        Ok(layers)
    }

    /// Induced subcomplex on the ball of radius `radius` around `center`.
    pub fn ball(&self, center: &Vertex, radius: usize, cap: usize) -> Result<Subcomplex, ComplexError> {
        let layers = self.ball_layers(center, radius, cap)?;
        self.induced(layers.into_iter().flatten())
    }

    /// Induced subgraph on a finite vertex set, with vertex names given by
    /// [`CubeComplex::label`] and vertices in canonical order.
    pub fn induced(&self, vertices: impl IntoIterator<Item = Vertex>) -> Result<Subcomplex, ComplexError> {
        let set: BTreeSet<Vertex> = vertices.into_iter().collect();
        let vertices: Vec<Vertex> = set.into_iter().collect();
        let names: Vec<String> = vertices.iter().map(|v| self.label(v)).collect();
        let mut pairs = Vec::new();
        for (i, v) in vertices.iter().enumerate() {
            for w in self.neighbors(v) {
                if let Ok(j) = vertices.binary_search(&w) {
                    if i < j {
                        pairs.push((i, j));
                    }
                }
            }
        }
        let complex = FiniteComplex::from_indices(names, &pairs)?;
        Ok(Subcomplex { complex, vertices })
    }

    /// Cubes containing `v`, sorted.
    pub fn cubes_containing(&self, v: &Vertex) -> Vec<Cube> {
        let mut out = match self {
            CubeComplex::Finite(f) => return f.cubes_containing(v.as_index()),
            CubeComplex::Lattice { .. } => {
                let p = v.as_point();
                // per axis: fixed, spanning [c-1, c] or spanning [c, c+1]
                let mut spans: Vec<Vec<Vec<i64>>> = vec![vec![p.to_vec()]];
                for axis in 0..p.len() {
                    let mut grown = Vec::new();
                    for corners in &spans {
                        grown.push(corners.clone());
                        for offset in [-1, 1] {
                            let mut doubled = corners.clone();
                            for c in corners {
                                let mut q = c.clone();
                                q[axis] += offset;
                                doubled.push(q);
                            }
                            grown.push(doubled);
                        }
                    }
                    spans = grown;
                }
                spans
                    .into_iter()
                    .map(|corners| Cube::new(corners.into_iter().map(Vertex::Point).collect()))
                    .collect::<Vec<_>>()
            }
            CubeComplex::Product(a, b) => {
                let (x, y) = v.as_pair();
                let left = a.cubes_containing(x);
                let right = b.cubes_containing(y);
                let mut out = Vec::with_capacity(left.len() * right.len());
                for c in &left {
                    for d in &right {
                        out.push(product_cube(c, d));
                    }
                }
                out
            }
        };
        out.sort();
        out
    }

    /// All cubes: every cube of a finite complex, or every cube with all
    /// vertices inside `window` for the infinite backends.
    pub fn cubes(&self, window: Option<&[Vertex]>) -> Result<Vec<Cube>, ComplexError> {
        if let CubeComplex::Finite(f) = self {
            return Ok(match window {
                None => f.cubes().to_vec(),
                Some(w) => {
                    let keep: BTreeSet<&Vertex> = w.iter().collect();
                    f.cubes()
                        .iter()
                        .filter(|c| c.vertices().iter().all(|v| keep.contains(v)))
                        .cloned()
                        .collect()
                }
            });
        }
        let window = window.ok_or(ComplexError::WindowRequired)?;
        let keep: BTreeSet<&Vertex> = window.iter().collect();
        let mut out = BTreeSet::new();
        for v in window {
            for c in self.cubes_containing(v) {
                if c.min_vertex() == v && c.vertices().iter().all(|w| keep.contains(w)) {
                    out.insert(c);
                }
            }
        }
        Ok(out.into_iter().collect())
    }

    /// Every vertex of a finite complex (finite products included), in
    /// canonical order.
    pub fn all_vertices(&self) -> Option<Vec<Vertex>> {
        match self {
            CubeComplex::Finite(f) => Some((0..f.len()).map(Vertex::Index).collect()),
            CubeComplex::Lattice { .. } => None,
            CubeComplex::Product(a, b) => {
                let left = a.all_vertices()?;
                let right = b.all_vertices()?;
                let mut out = Vec::with_capacity(left.len() * right.len());
                for x in &left {
                    for y in &right {
                        out.push(Vertex::pair(x.clone(), y.clone()));
                    }
                }
                Some(out)
            }
        }
    }
}

fn product_cube(c: &Cube, d: &Cube) -> Cube {
    let mut vs = Vec::with_capacity(c.vertices().len() * d.vertices().len());
    for x in c.vertices() {
        for y in d.vertices() {
            vs.push(Vertex::pair(x.clone(), y.clone()));
        }
    }
    Cube::new(vs)
}

/// Vertices of the box `[lo, hi]^rank` of a lattice in canonical order.
pub fn lattice_box(rank: usize, lo: i64, hi: i64) -> Vec<Vertex> {
    let mut points: Vec<Vec<i64>> = vec![Vec::new()];
    for _ in 0..rank {
        points = points
            .into_iter()
            .flat_map(|p| {
                (lo..=hi).map(move |c| {
                    let mut q = p.clone();
                    q.push(c);
                    q
                })
            })
            .collect();
    }
    points.into_iter().map(Vertex::Point).collect()
}
