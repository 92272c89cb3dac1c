use std::fmt;

/// A vertex of a cube complex.
///
/// The payload depends on the backend: an index into the vertex table of a
/// finite complex, an integer coordinate tuple for a lattice, or a pair of
/// factor vertices for a product. The derived order is the canonical order
/// used for every tie-break in the crate: input order for finite complexes,
/// lexicographic on coordinates and on pairs otherwise.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Vertex {
    Index(usize),
    Point(Vec<i64>),
    Pair(Box<Vertex>, Box<Vertex>),
}

impl Vertex {
    pub fn point(coords: impl Into<Vec<i64>>) -> Self {
        Vertex::Point(coords.into())
    }

    pub fn pair(left: Vertex, right: Vertex) -> Self {
        Vertex::Pair(Box::new(left), Box::new(right))
    }

    pub fn as_index(&self) -> usize {
        match self {
            Vertex::Index(i) => *i,
            other => panic!("expected a finite-complex vertex, got {other}"),
        }
    }

    pub fn as_point(&self) -> &[i64] {
        match self {
            Vertex::Point(p) => p,
            other => panic!("expected a lattice vertex, got {other}"),
        }
    }

    pub fn as_pair(&self) -> (&Vertex, &Vertex) {
        match self {
            Vertex::Pair(a, b) => (a, b),
            other => panic!("expected a product vertex, got {other}"),
        }
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Vertex::Index(i) => write!(f, "#{i}"),
            Vertex::Point(p) => {
                write!(f, "(")?;
                for (k, c) in p.iter().enumerate() {
                    if k > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{c}")?;
                }
                write!(f, ")")
            }
            Vertex::Pair(a, b) => write!(f, "[{a}|{b}]"),
        }
    }
}

/// An edge of the 1-skeleton with a direction. `tail != head` and the two
/// endpoints are adjacent.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OrientedEdge {
    pub tail: Vertex,
    pub head: Vertex,
}

impl OrientedEdge {
    pub fn new(tail: Vertex, head: Vertex) -> Self {
        OrientedEdge { tail, head }
    }

    pub fn reverse(&self) -> Self {
        OrientedEdge {
            tail: self.head.clone(),
            head: self.tail.clone(),
        }
    }

    /// The same edge with endpoints in canonical order.
    pub fn unoriented(&self) -> Self {
        if self.tail <= self.head {
            self.clone()
        } else {
            self.reverse()
        }
    }
}

impl fmt::Display for OrientedEdge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}->{}", self.tail, self.head)
    }
}
