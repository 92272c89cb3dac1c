//! Hyperplanes as Θ-classes of edges, halfspaces and the crossing and
//! separation predicates.
//!
//! Two edges `ab` and `cd` are Θ-related when `d(a,c) = d(b,d)` and
//! `d(a,d) = d(b,c) = d(a,c) + 1`. On a median graph this relation is an
//! equivalence whose classes are exactly the hyperplanes of the cube
//! complex; the side of a hyperplane containing a vertex is decided by which
//! endpoint of a representative edge is closer.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::complex::{Cube, CubeComplex, OrientedEdge, Vertex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Minus,
    Plus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Minus => Sign::Plus,
            Sign::Plus => Sign::Minus,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Minus => "-",
            Sign::Plus => "+",
        })
    }
}

/// A hyperplane in canonical form.
///
/// * finite complexes: the smallest edge of the Θ-class, oriented from the
///   smaller to the larger vertex;
/// * lattices: the wall between coordinates `wall` and `wall + 1` on `axis`;
/// * products: a hyperplane of one of the two factors.
///
/// The positive side is the head side of the representative edge (for a
/// wall, coordinates `> wall`).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Hyperplane {
    Edge { tail: usize, head: usize },
    Wall { axis: usize, wall: i64 },
    Factor { factor: u8, inner: Box<Hyperplane> },
}

impl Hyperplane {
    pub fn wall(axis: usize, wall: i64) -> Self {
        Hyperplane::Wall { axis, wall }
    }
}

impl fmt::Display for Hyperplane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Hyperplane::Edge { tail, head } => write!(f, "H(#{tail},#{head})"),
            Hyperplane::Wall { axis, wall } => write!(f, "W(axis {axis}, wall {wall})"),
            Hyperplane::Factor { factor, inner } => write!(f, "F{factor}:{inner}"),
        }
    }
}

/// One of the two sides of a hyperplane.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Halfspace {
    pub hyperplane: Hyperplane,
    pub sign: Sign,
}

impl Halfspace {
    pub fn complement(&self) -> Halfspace {
        Halfspace {
            hyperplane: self.hyperplane.clone(),
            sign: self.sign.flip(),
        }
    }

    pub fn contains(&self, x: &CubeComplex, w: &Vertex) -> bool {
        side(x, &self.hyperplane, w) == self.sign
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HyperplaneError {
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("{found} pairwise crossing hyperplanes exceed the dimension {dimension}")]
    DimensionViolation { found: usize, dimension: usize },
    #[error("no pairwise disjoint triple found")]
    NotFound,
    #[error("no cube realizes the pairwise crossing family {0:?}")]
    HellyViolation(Vec<Hyperplane>),
    #[error("internal invariant failed: {0}")]
    Internal(String),
}

pub(crate) fn theta_by_distances(ac: usize, bd: usize, ad: usize, bc: usize) -> bool {
    let straight = ac == bd && ad == bc && ad == ac + 1;
    let crossed = ad == bc && ac == bd && ac == ad + 1;
    straight || crossed
}

/// Djoković–Winkler relation between two edges, by the distance criterion.
pub fn theta_related(x: &CubeComplex, e: &OrientedEdge, f: &OrientedEdge) -> bool {
    theta_by_distances(
        x.distance(&e.tail, &f.tail),
        x.distance(&e.head, &f.head),
        x.distance(&e.tail, &f.head),
        x.distance(&e.head, &f.tail),
    )
}

/// The canonical hyperplane dual to an edge.
pub fn hyperplane_of(x: &CubeComplex, e: &OrientedEdge) -> Hyperplane {
    match x {
        CubeComplex::Finite(f) => {
            let (tail, head) = f.class_representative(e.tail.as_index(), e.head.as_index());
            Hyperplane::Edge { tail, head }
        }
        CubeComplex::Lattice { .. } => {
            let (p, q) = (e.tail.as_point(), e.head.as_point());
            let axis = (0..p.len())
                .find(|&i| p[i] != q[i])
                .expect("edge endpoints differ");
            Hyperplane::Wall {
                axis,
                wall: p[axis].min(q[axis]),
            }
        }
        CubeComplex::Product(a, b) => {
            let (x1, x2) = e.tail.as_pair();
            let (y1, y2) = e.head.as_pair();
            if x1 != y1 {
                let inner = hyperplane_of(a, &OrientedEdge::new(x1.clone(), y1.clone()));
                Hyperplane::Factor { factor: 0, inner: Box::new(inner) }
            } else {
                let inner = hyperplane_of(b, &OrientedEdge::new(x2.clone(), y2.clone()));
                Hyperplane::Factor { factor: 1, inner: Box::new(inner) }
            }
        }
    }
}

/// The oriented representative edge; its head lies on the positive side.
pub fn representative(x: &CubeComplex, h: &Hyperplane) -> OrientedEdge {
    match (x, h) {
        (CubeComplex::Finite(_), Hyperplane::Edge { tail, head }) => {
            OrientedEdge::new(Vertex::Index(*tail), Vertex::Index(*head))
        }
        (CubeComplex::Lattice { rank }, Hyperplane::Wall { axis, wall }) => {
            let mut tail = vec![0; *rank];
            tail[*axis] = *wall;
            let mut head = tail.clone();
            head[*axis] = wall + 1;
            OrientedEdge::new(Vertex::Point(tail), Vertex::Point(head))
        }
        (CubeComplex::Product(a, b), Hyperplane::Factor { factor, inner }) => {
            if *factor == 0 {
                let e = representative(a, inner);
                let o = b.origin();
                OrientedEdge::new(Vertex::pair(e.tail, o.clone()), Vertex::pair(e.head, o))
            } else {
                let e = representative(b, inner);
                let o = a.origin();
                OrientedEdge::new(Vertex::pair(o.clone(), e.tail), Vertex::pair(o, e.head))
            }
        }
        _ => panic!("hyperplane {h} does not belong to this backend"),
    }
}

/// Whether `h` is a hyperplane of `x` (shape check plus, for finite
/// complexes, that it is a class representative).
pub fn is_hyperplane_of(x: &CubeComplex, h: &Hyperplane) -> bool {
    match (x, h) {
        (CubeComplex::Finite(f), Hyperplane::Edge { tail, head }) => {
            *tail < f.len()
                && *head < f.len()
                && f.edge_id(*tail, *head).is_some()
                && tail < head
                && f.class_representative(*tail, *head) == (*tail, *head)
        }
        (CubeComplex::Lattice { rank }, Hyperplane::Wall { axis, .. }) => axis < rank,
        (CubeComplex::Product(a, b), Hyperplane::Factor { factor, inner }) => match factor {
            0 => is_hyperplane_of(a, inner),
            1 => is_hyperplane_of(b, inner),
            _ => false,
        },
        _ => false,
    }
}

/// Hyperplanes crossed by the canonical geodesic from `x0` to `y0`, in
/// traversal order. These are exactly the hyperplanes separating the two
/// vertices.
pub fn hyperplanes_between(x: &CubeComplex, x0: &Vertex, y0: &Vertex) -> Vec<Hyperplane> {
    x.geodesic(x0, y0)
        .windows(2)
        .map(|w| hyperplane_of(x, &OrientedEdge::new(w[0].clone(), w[1].clone())))
        .collect()
}

/// `Plus` iff `w` is strictly closer to the head of the representative.
pub fn side(x: &CubeComplex, h: &Hyperplane, w: &Vertex) -> Sign {
    let e = representative(x, h);
    if x.distance(w, &e.head) < x.distance(w, &e.tail) {
        Sign::Plus
    } else {
        Sign::Minus
    }
}

fn quadrant(x: &CubeComplex, h1: &Hyperplane, h2: &Hyperplane, w: &Vertex) -> usize {
    let s1 = (side(x, h1, w) == Sign::Plus) as usize;
    let s2 = (side(x, h2, w) == Sign::Plus) as usize;
    2 * s1 + s2
}

/// Whether two distinct hyperplanes cross, i.e. all four sign quadrants
/// contain a vertex. Equal hyperplanes do not cross.
///
/// Lattices and products answer structurally. Finite complexes probe the
/// four representative endpoints and their four triple medians first, then
/// scan the convex hull of the endpoints, which meets every nonempty
/// quadrant by the Helly property of convex sets.
pub fn crosses(x: &CubeComplex, h1: &Hyperplane, h2: &Hyperplane) -> bool {
    if h1 == h2 {
        return false;
    }
    match (x, h1, h2) {
        (CubeComplex::Lattice { .. }, Hyperplane::Wall { axis: a1, .. }, Hyperplane::Wall { axis: a2, .. }) => {
            a1 != a2
        }
        (
            CubeComplex::Product(a, b),
            Hyperplane::Factor { factor: f1, inner: i1 },
            Hyperplane::Factor { factor: f2, inner: i2 },
        ) => {
            if f1 != f2 {
                true
            } else if *f1 == 0 {
                crosses(a, i1, i2)
            } else {
                crosses(b, i1, i2)
            }
        }
        _ => crosses_by_quadrants(x, h1, h2),
    }
}

pub(crate) fn crosses_by_quadrants(x: &CubeComplex, h1: &Hyperplane, h2: &Hyperplane) -> bool {
    let e1 = representative(x, h1);
    let e2 = representative(x, h2);
    let ends = [e1.tail, e1.head, e2.tail, e2.head];
    let mut seen = [false; 4];
    let probe = |w: &Vertex, seen: &mut [bool; 4]| {
        seen[quadrant(x, h1, h2, w)] = true;
        seen.iter().all(|&s| s)
    };
    for w in &ends {
        probe(w, &mut seen);
    }
    for skip in 0..4 {
        let t: Vec<&Vertex> = (0..4).filter(|&i| i != skip).map(|i| &ends[i]).collect();
        if let Ok(m) = x.median(t[0], t[1], t[2]) {
            if probe(&m, &mut seen) {
                return true;
            }
        }
    }
    x.convex_hull(ends.iter()).iter().any(|w| probe(w, &mut seen))
}

/// Whether `h` separates `h1` from `h2`: the representative endpoints of
/// `h1` and of `h2` lie on opposite sides of `h`. The three hyperplanes must
/// be distinct and pairwise non-crossing.
pub fn separates(
    x: &CubeComplex,
    h: &Hyperplane,
    h1: &Hyperplane,
    h2: &Hyperplane,
) -> Result<bool, HyperplaneError> {
    if h == h1 || h == h2 || h1 == h2 {
        return Err(HyperplaneError::PreconditionViolated(
            "separation needs three distinct hyperplanes".into(),
        ));
    }
    for (p, q) in [(h, h1), (h, h2), (h1, h2)] {
        if crosses(x, p, q) {
            return Err(HyperplaneError::PreconditionViolated(format!("{p} crosses {q}")));
        }
    }
    let e1 = representative(x, h1);
    let e2 = representative(x, h2);
    // a hyperplane disjoint from h lies in one halfspace, so one endpoint decides
    Ok(side(x, h, &e1.tail) != side(x, h, &e2.tail))
}

/// Hyperplanes dual to the edges of a cube (one per direction), sorted.
pub fn dual_hyperplanes(x: &CubeComplex, cube: &Cube) -> Vec<Hyperplane> {
    let base = cube.min_vertex();
    let mut out: Vec<Hyperplane> = cube
        .vertices()
        .iter()
        .filter(|v| x.is_adjacent(base, v))
        .map(|v| hyperplane_of(x, &OrientedEdge::new(base.clone(), v.clone())))
        .collect();
    out.sort();
    out
}

/// Every hyperplane of a finite complex (finite products included), in
/// canonical order.
pub fn all_hyperplanes(x: &CubeComplex) -> Option<Vec<Hyperplane>> {
    match x {
        CubeComplex::Finite(f) => {
            let set: BTreeSet<Hyperplane> = f
                .edges()
                .iter()
                .map(|&(a, b)| {
                    let (tail, head) = f.class_representative(a, b);
                    Hyperplane::Edge { tail, head }
                })
                .collect();
            Some(set.into_iter().collect())
        }
        CubeComplex::Lattice { .. } => None,
        CubeComplex::Product(a, b) => {
            let mut out: Vec<Hyperplane> = all_hyperplanes(a)?
                .into_iter()
                .map(|h| Hyperplane::Factor { factor: 0, inner: Box::new(h) })
                .collect();
            out.extend(
                all_hyperplanes(b)?
                    .into_iter()
                    .map(|h| Hyperplane::Factor { factor: 1, inner: Box::new(h) }),
            );
            Some(out)
        }
    }
}
