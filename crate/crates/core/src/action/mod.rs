//! Simplicial automorphisms, finitely generated actions, classification of
//! single automorphisms and fixed sets.

mod classify;
mod fixset;
mod group;

pub use classify::{
    classify, elliptic_certificate, hyperbolic_certificate, translation_length_estimate,
    verify_certificate, Budget, Certificate, Classification, TranslationEstimate,
};
pub use fixset::{bounded_orbit_fixed_cube, fix_intersection, fix_set, FixComparison, FixError, FixSet};
pub use group::{orbit, Generator, GroupAction, OrbitResult, Word, WordBfs};

use std::fmt;

use thiserror::Error;

use crate::complex::{Cube, CubeComplex, OrientedEdge, Vertex};
use crate::hyperplane::{hyperplane_of, representative, Hyperplane};

/// A simplicial automorphism of a cube complex, in the representation of
/// its backend.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Automorphism {
    /// `map[i]` is the image of finite vertex `i`.
    Permutation(Vec<usize>),
    /// Signed coordinate permutation plus translation:
    /// `y[i] = signs[i] * x[perm[i]] + translate[i]`.
    Affine {
        signs: Vec<i64>,
        perm: Vec<usize>,
        translate: Vec<i64>,
    },
    /// `(a, b) -> (left(a), right(b))`, or `(left(b), right(a))` when
    /// `swap` is set (identical factors only).
    Product {
        left: Box<Automorphism>,
        right: Box<Automorphism>,
        swap: bool,
    },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ActionError {
    #[error("unknown generator {0:?}")]
    UnknownGenerator(String),
    #[error("duplicate generator name {0:?}")]
    DuplicateName(String),
    #[error("generator {name:?} is not an automorphism: {violation}")]
    InvalidGenerator {
        name: String,
        violation: AutomorphismViolation,
    },
    #[error("automorphisms of different shapes cannot be composed")]
    Incompatible,
    #[error("vertex {0} does not belong to the complex")]
    UnknownVertex(String),
}

/// Why a map fails to be an automorphism.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AutomorphismViolation {
    Malformed(String),
    BrokenEdge(OrientedEdge),
}

impl fmt::Display for AutomorphismViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AutomorphismViolation::Malformed(msg) => write!(f, "malformed: {msg}"),
            AutomorphismViolation::BrokenEdge(e) => {
                write!(f, "edge {}-{} is not mapped to an edge", e.tail, e.head)
            }
        }
    }
}

/// Radius of the sampled adjacency check on infinite backends.
const SAMPLE_RADIUS: usize = 3;

impl Automorphism {
    pub fn identity(x: &CubeComplex) -> Automorphism {
        match x {
            CubeComplex::Finite(f) => Automorphism::Permutation((0..f.len()).collect()),
            CubeComplex::Lattice { rank } => Automorphism::Affine {
                signs: vec![1; *rank],
                perm: (0..*rank).collect(),
                translate: vec![0; *rank],
            },
            CubeComplex::Product(a, b) => Automorphism::Product {
                left: Box::new(Automorphism::identity(a)),
                right: Box::new(Automorphism::identity(b)),
                swap: false,
            },
        }
    }

    /// Lattice translation by `t`.
    pub fn translation(t: Vec<i64>) -> Automorphism {
        let n = t.len();
        Automorphism::Affine {
            signs: vec![1; n],
            perm: (0..n).collect(),
            translate: t,
        }
    }

    pub fn apply(&self, v: &Vertex) -> Vertex {
        match self {
            Automorphism::Permutation(map) => Vertex::Index(map[v.as_index()]),
            Automorphism::Affine { signs, perm, translate } => {
                let p = v.as_point();
                Vertex::Point(
                    (0..p.len())
                        .map(|i| signs[i] * p[perm[i]] + translate[i])
                        .collect(),
                )
            }
            Automorphism::Product { left, right, swap } => {
                let (a, b) = v.as_pair();
                if *swap {
                    Vertex::pair(left.apply(b), right.apply(a))
                } else {
                    Vertex::pair(left.apply(a), right.apply(b))
                }
            }
        }
    }

    pub fn apply_edge(&self, e: &OrientedEdge) -> OrientedEdge {
        OrientedEdge::new(self.apply(&e.tail), self.apply(&e.head))
    }

    pub fn apply_cube(&self, c: &Cube) -> Cube {
        c.map(|v| self.apply(v))
    }

    pub fn apply_hyperplane(&self, x: &CubeComplex, h: &Hyperplane) -> Hyperplane {
        hyperplane_of(x, &self.apply_edge(&representative(x, h)))
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Automorphism) -> Result<Automorphism, ActionError> {
        match (self, other) {
            (Automorphism::Permutation(f), Automorphism::Permutation(g)) if f.len() == g.len() => {
                Ok(Automorphism::Permutation(g.iter().map(|&i| f[i]).collect()))
            }
            (
                Automorphism::Affine { signs: s1, perm: p1, translate: t1 },
                Automorphism::Affine { signs: s2, perm: p2, translate: t2 },
            ) if s1.len() == s2.len() => {
                // y_i = s1_i * (s2_j x_{p2_j} + t2_j) + t1_i with j = p1_i
                let n = s1.len();
                let mut signs = Vec::with_capacity(n);
                let mut perm = Vec::with_capacity(n);
                let mut translate = Vec::with_capacity(n);
                for i in 0..n {
                    let j = p1[i];
                    signs.push(s1[i] * s2[j]);
                    perm.push(p2[j]);
                    translate.push(s1[i] * t2[j] + t1[i]);
                }
                Ok(Automorphism::Affine { signs, perm, translate })
            }
            (
                Automorphism::Product { left: fl, right: fr, swap: fs },
                Automorphism::Product { left: gl, right: gr, swap: gs },
            ) => {
                let (left, right) = if *fs {
                    (fl.compose(gr)?, fr.compose(gl)?)
                } else {
                    (fl.compose(gl)?, fr.compose(gr)?)
                };
                Ok(Automorphism::Product {
                    left: Box::new(left),
                    right: Box::new(right),
                    swap: fs ^ gs,
                })
            }
            _ => Err(ActionError::Incompatible),
        }
    }

    pub fn inverse(&self) -> Automorphism {
        match self {
            Automorphism::Permutation(map) => {
                let mut inv = vec![0; map.len()];
                for (i, &j) in map.iter().enumerate() {
                    inv[j] = i;
                }
                Automorphism::Permutation(inv)
            }
            Automorphism::Affine { signs, perm, translate } => {
                let n = signs.len();
                let mut s = vec![1; n];
                let mut p = vec![0; n];
                let mut t = vec![0; n];
                for i in 0..n {
                    let j = perm[i];
                    s[j] = signs[i];
                    p[j] = i;
                    t[j] = -signs[i] * translate[i];
                }
                Automorphism::Affine { signs: s, perm: p, translate: t }
            }
            Automorphism::Product { left, right, swap } => {
                if *swap {
                    Automorphism::Product {
                        left: Box::new(right.inverse()),
                        right: Box::new(left.inverse()),
                        swap: true,
                    }
                } else {
                    Automorphism::Product {
                        left: Box::new(left.inverse()),
                        right: Box::new(right.inverse()),
                        swap: false,
                    }
                }
            }
        }
    }

    /// `self` composed with itself `k` times (`k = 0` is the identity).
    pub fn power(&self, x: &CubeComplex, k: u32) -> Automorphism {
        let mut out = Automorphism::identity(x);
        for _ in 0..k {
            out = self.compose(&out).expect("powers of one automorphism compose");
        }
        out
    }

    pub fn is_identity(&self, x: &CubeComplex) -> bool {
        *self == Automorphism::identity(x)
    }
}

fn check_shape(x: &CubeComplex, phi: &Automorphism) -> Result<(), AutomorphismViolation> {
    let malformed = |msg: String| Err(AutomorphismViolation::Malformed(msg));
    match (x, phi) {
        (CubeComplex::Finite(f), Automorphism::Permutation(map)) => {
            if map.len() != f.len() {
                return malformed(format!("permutation has {} entries for {} vertices", map.len(), f.len()));
            }
            let mut hit = vec![false; map.len()];
            for &j in map {
                if j >= map.len() || std::mem::replace(&mut hit[j], true) {
                    return malformed("vertex map is not a bijection".into());
                }
            }
            Ok(())
        }
        (CubeComplex::Lattice { rank }, Automorphism::Affine { signs, perm, translate }) => {
            if signs.len() != *rank || perm.len() != *rank || translate.len() != *rank {
                return malformed(format!("affine map rows do not match rank {rank}"));
            }
            if signs.iter().any(|s| s.abs() != 1) {
                return malformed("signs must be +1 or -1".into());
            }
            let mut hit = vec![false; *rank];
            for &j in perm {
                if j >= *rank || std::mem::replace(&mut hit[j], true) {
                    return malformed("perm is not a permutation".into());
                }
            }
            Ok(())
        }
        (CubeComplex::Product(a, b), Automorphism::Product { left, right, swap }) => {
            if *swap {
                if !a.same_structure(b) {
                    return malformed("factor swap needs identical factors".into());
                }
                check_shape(a, left)?;
                check_shape(a, right)
            } else {
                check_shape(a, left)?;
                check_shape(b, right)
            }
        }
        _ => malformed("automorphism kind does not match the backend".into()),
    }
}

/// Checks that `phi` is a simplicial automorphism of `x`.
///
/// Finite complexes (and products of finite complexes) are checked
/// exhaustively. Infinite backends get a structural check plus adjacency
/// preservation on the ball of radius 3 around the base vertex.
pub fn verify_automorphism(x: &CubeComplex, phi: &Automorphism) -> Result<(), AutomorphismViolation> {
    check_shape(x, phi)?;
    let sample: Vec<Vertex> = match x.all_vertices() {
        Some(all) => all,
        None => x
            .ball_layers(&x.origin(), SAMPLE_RADIUS, crate::complex::DEFAULT_BALL_CAP)
            .map_err(|e| AutomorphismViolation::Malformed(e.to_string()))?
            .into_iter()
            .flatten()
            .collect(),
    };
    for u in &sample {
        let image = phi.apply(u);
        for w in x.neighbors(u) {
            if u < &w && !x.is_adjacent(&image, &phi.apply(&w)) {
                return Err(AutomorphismViolation::BrokenEdge(OrientedEdge::new(u.clone(), w)));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests;
