//! Global fixed points of finitely generated actions.
//!
//! [`fixed_point_or_witness`] either returns a cube fixed by the whole
//! group or produces a group element together with a skewering
//! certificate. The search runs as follows:
//!
//! 1. `S` is the set of hyperplanes crossed by the geodesics from the base
//!    vertex `v` to its images under the generators, and
//!    `N = |S| · (d + d(d+1))`.
//! 2. A breadth-first search over words looks for `g` with `d(v, gv) >= N`.
//!    If the orbit closes first it is finite, and a cube invariant under
//!    every generator is found in its convex hull.
//! 3. Otherwise the translated generator geodesics form a path from `v` to
//!    `gv`. Each hyperplane separating `v` from `gv` is a translate `hJ` of
//!    some `J` in `S`, with `h` a prefix of `g`. Some `J` is hit at least
//!    `d + d(d+1)` times, so those translates contain three pairwise
//!    disjoint hyperplanes `h1 J, h2 J, h3 J` with `h2 J` in the middle.
//!    With `a = h2 h1^-1` and `b = h3 h1^-1`, one of `a`, `b`, `b a^-1` is
//!    hyperbolic; each is classified and the first certified one returned.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::action::{
    bounded_orbit_fixed_cube, classify, ActionError, Automorphism, Budget, Certificate, Classification,
    FixError, GroupAction, Word, WordBfs,
};
use crate::complex::{Cube, CubeComplex, OrientedEdge, Vertex};
use crate::hyperplane::{hyperplane_of, hyperplanes_between, side, Hyperplane, HyperplaneError};
use crate::triple::{disjoint_threshold, find_disjoint_triple, separating_member};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FixedPointError {
    #[error("internal invariant failed: {0}")]
    Internal(String),
    #[error("orbit exploration exceeded {cap} vertices")]
    BudgetExceeded { cap: usize },
    #[error(transparent)]
    Hyperplane(#[from] HyperplaneError),
    #[error(transparent)]
    Fix(#[from] FixError),
    #[error(transparent)]
    Action(#[from] ActionError),
}

/// The per-generator hyperplane sets and their union.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BaseHyperplanes {
    /// `per_generator[i]` lists the hyperplanes between `v` and `g_i(v)`
    /// along the canonical geodesic.
    pub per_generator: Vec<Vec<Hyperplane>>,
    /// Deduplicated union in canonical order.
    pub union: Vec<Hyperplane>,
}

pub fn base_hyperplane_set(x: &CubeComplex, action: &GroupAction) -> BaseHyperplanes {
    let v = action.base();
    let per_generator: Vec<Vec<Hyperplane>> = action
        .generators()
        .iter()
        .map(|g| hyperplanes_between(x, v, &g.map.apply(v)))
        .collect();
    let mut union: Vec<Hyperplane> = per_generator.iter().flatten().cloned().collect();
    union.sort();
    union.dedup();
    BaseHyperplanes { per_generator, union }
}

/// `size · (d + d(d+1))`.
pub fn threshold(size: usize, dimension: usize) -> usize {
    size * disjoint_threshold(dimension)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FarElement {
    Found { word: Word, distance: usize },
    /// The orbit closed without reaching the target distance.
    AllBounded { orbit: Vec<Vertex> },
}

/// Shortest-then-lexicographically-least word `g` with `d(v, gv) >= target`,
/// or the complete orbit if it closes first.
pub fn find_far_element(
    x: &CubeComplex,
    action: &GroupAction,
    target: usize,
    cap: usize,
) -> Result<FarElement, FixedPointError> {
    let v = action.base();
    let mut bfs = WordBfs::new(action, v);
    while let Some(layer) = bfs.next_layer() {
        let best = layer
            .iter()
            .filter_map(|(u, w)| {
                let d = x.distance(v, u);
                (d >= target).then_some((w, d))
            })
            .min_by(|a, b| a.0.cmp(b.0));
        if let Some((word, distance)) = best {
            return Ok(FarElement::Found {
                word: action.word_of(word),
                distance,
            });
        }
        if bfs.seen() > cap {
            return Err(FixedPointError::BudgetExceeded { cap });
        }
    }
    let mut orbit: Vec<Vertex> = bfs.into_seen().into_iter().collect();
    orbit.sort();
    Ok(FarElement::AllBounded { orbit })
}

/// An edge of the translated path with the data explaining its hyperplane:
/// `hyperplane = prefix · base`, where `base` lies in the base set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProvenancedEdge {
    pub edge: OrientedEdge,
    pub hyperplane: Hyperplane,
    pub base: Hyperplane,
    pub prefix: Word,
    /// Index `j` of the segment `γ_j` holding the edge.
    pub segment: usize,
}

/// Concatenation of the translated generator geodesics from `v` to `gv`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TranslatedPath {
    pub vertices: Vec<Vertex>,
    /// `(start, end)` vertex positions of each segment; empty segments have
    /// `start == end`.
    pub segments: Vec<(usize, usize)>,
    pub edges: Vec<ProvenancedEdge>,
}

/// Builds `γ_0 ⋯ γ_{l-1}` for `g = g_{i_1} ⋯ g_{i_l}`, where
/// `γ_j = g_{i_1} ⋯ g_{i_j}(λ_{i_{j+1}})` and `λ_i` is the canonical
/// geodesic from `v` to `g_i(v)`.
pub fn build_translated_path(
    x: &CubeComplex,
    action: &GroupAction,
    word: &Word,
) -> Result<TranslatedPath, FixedPointError> {
    let letters = action.resolve(word)?;
    let v = action.base();
    let mut vertices = vec![v.clone()];
    let mut segments = Vec::with_capacity(letters.len());
    let mut edges = Vec::new();
    let mut prefix_map = Automorphism::identity(x);
    for (j, &letter) in letters.iter().enumerate() {
        let generator = &action.generators()[letter];
        let lambda = x.geodesic(v, &generator.map.apply(v));
        let start = vertices.len() - 1;
        let prefix = action.word_of(&letters[..j]);
        for pair in lambda.windows(2) {
            let base_edge = OrientedEdge::new(pair[0].clone(), pair[1].clone());
            let base = hyperplane_of(x, &base_edge);
            let edge = prefix_map.apply_edge(&base_edge);
            let hyperplane = hyperplane_of(x, &edge);
            if prefix_map.apply_hyperplane(x, &base) != hyperplane {
                return Err(FixedPointError::Internal(format!(
                    "translate of {base} does not match the hyperplane of its edge"
                )));
            }
            vertices.push(edge.head.clone());
            edges.push(ProvenancedEdge {
                edge,
                hyperplane,
                base,
                prefix: prefix.clone(),
                segment: j,
            });
        }
        segments.push((start, vertices.len() - 1));
        prefix_map = prefix_map.compose(&generator.map)?;
    }
    Ok(TranslatedPath {
        vertices,
        segments,
        edges,
    })
}

/// One of the three candidate elements and what classification said.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CandidateReport {
    pub label: &'static str,
    pub word: Word,
    pub classification: Classification,
}

/// Intermediate state kept when the pipeline cannot certify anything.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct UndecidedReport {
    pub reason: String,
    pub far_word: Option<Word>,
    pub distance: Option<usize>,
    pub bucket_sizes: Vec<(Hyperplane, usize)>,
    pub triple: Option<[Hyperplane; 3]>,
    pub candidates: Vec<CandidateReport>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FixedPointOutcome {
    FixedPoint {
        cube: Cube,
    },
    HyperbolicWitness {
        word: Word,
        certificate: Certificate,
        candidates: Vec<CandidateReport>,
    },
    Undecided {
        report: UndecidedReport,
    },
}

impl FixedPointOutcome {
    pub fn kind(&self) -> &'static str {
        match self {
            FixedPointOutcome::FixedPoint { .. } => "fixed-point",
            FixedPointOutcome::HyperbolicWitness { .. } => "hyperbolic-witness",
            FixedPointOutcome::Undecided { .. } => "undecided",
        }
    }
}

/// Returns a globally fixed cube or a certified hyperbolic element.
pub fn fixed_point_or_witness(
    x: &CubeComplex,
    action: &GroupAction,
    budget: &Budget,
) -> Result<FixedPointOutcome, FixedPointError> {
    let v = action.base();
    let base = base_hyperplane_set(x, action);
    if base.union.is_empty() {
        // every generator fixes v
        return Ok(FixedPointOutcome::FixedPoint {
            cube: Cube::vertex(v.clone()),
        });
    }
    let dimension = x.dimension();
    let target = threshold(base.union.len(), dimension);
    let far = match find_far_element(x, action, target, budget.orbit_cap) {
        Ok(far) => far,
        Err(FixedPointError::BudgetExceeded { cap }) => {
            return Ok(FixedPointOutcome::Undecided {
                report: UndecidedReport {
                    reason: format!("orbit exploration exceeded {cap} vertices below distance {target}"),
                    ..UndecidedReport::default()
                },
            })
        }
        Err(e) => return Err(e),
    };
    let (word, distance) = match far {
        FarElement::AllBounded { orbit } => {
            let cube = bounded_orbit_fixed_cube(x, action, &orbit)?;
            return Ok(FixedPointOutcome::FixedPoint { cube });
        }
        FarElement::Found { word, distance } => (word, distance),
    };
    let image = action.apply(&word, v)?;
    let path = build_translated_path(x, action, &word)?;

    // hyperplanes separating v from gv, each with the provenance of its first crossing
    let mut separating: Vec<&ProvenancedEdge> = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for e in &path.edges {
        if seen.insert(&e.hyperplane) && side(x, &e.hyperplane, v) != side(x, &e.hyperplane, &image) {
            separating.push(e);
        }
    }
    if separating.len() != distance {
        return Err(FixedPointError::Internal(format!(
            "{} separating hyperplanes on the path but d(v, gv) = {distance}",
            separating.len()
        )));
    }
    let mut buckets: BTreeMap<&Hyperplane, Vec<&ProvenancedEdge>> = BTreeMap::new();
    for e in &separating {
        buckets.entry(&e.base).or_default().push(e);
    }
    let bucket_sizes: Vec<(Hyperplane, usize)> =
        buckets.iter().map(|(j, b)| ((*j).clone(), b.len())).collect();
    let bound = disjoint_threshold(dimension);
    let Some((_, bucket)) = buckets.iter().find(|(_, b)| b.len() >= bound) else {
        return Err(FixedPointError::Internal(format!(
            "no base hyperplane has {bound} translates among {distance}"
        )));
    };
    let family: Vec<Hyperplane> = bucket.iter().map(|e| e.hyperplane.clone()).collect();
    let found = find_disjoint_triple(x, &family)?;
    let middle = separating_member(x, &found.triple)?.ok_or_else(|| {
        FixedPointError::Internal("no member of the disjoint triple separates the other two".into())
    })?;
    let position = |h: &Hyperplane| family.iter().position(|k| k == h).expect("triple member");
    let mut outer: Vec<&Hyperplane> = (0..3).filter(|&i| i != middle).map(|i| &found.triple[i]).collect();
    outer.sort_by_key(|h| position(h));
    let prefix_of = |h: &Hyperplane| action.resolve(&bucket[position(h)].prefix);
    let h1 = prefix_of(outer[0])?;
    let h2 = prefix_of(&found.triple[middle])?;
    let h3 = prefix_of(outer[1])?;
    let h1_inv = action.inverse_letters(&h1);
    let a: Vec<usize> = action.reduce_letters(&[h2.as_slice(), h1_inv.as_slice()].concat());
    let b: Vec<usize> = action.reduce_letters(&[h3.as_slice(), h1_inv.as_slice()].concat());
    let ba_inv: Vec<usize> = action.reduce_letters(&[b.as_slice(), action.inverse_letters(&a).as_slice()].concat());

    let candidates: Vec<CandidateReport> = [("a", a), ("b", b), ("b*a^-1", ba_inv)]
        .into_iter()
        .map(|(label, letters)| {
            let g = action.evaluate_letters(x, &letters);
            CandidateReport {
                label,
                word: action.word_of(&letters),
                classification: classify(x, &g, v, budget),
            }
        })
        .collect();
    if let Some(winner) = candidates.iter().find(|c| c.classification.is_hyperbolic()) {
        let certificate = winner.classification.certificate().cloned().expect("certified");
        return Ok(FixedPointOutcome::HyperbolicWitness {
            word: winner.word.clone(),
            certificate,
            candidates,
        });
    }
    Ok(FixedPointOutcome::Undecided {
        report: UndecidedReport {
            reason: "no candidate certified hyperbolic within the budget".into(),
            far_word: Some(word),
            distance: Some(distance),
            bucket_sizes,
            triple: Some(found.triple),
            candidates,
        },
    })
}

#[cfg(test)]
mod tests;
