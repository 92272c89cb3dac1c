use std::collections::BTreeSet;

use thiserror::Error;

use super::{Automorphism, GroupAction};
use crate::complex::{ComplexError, Cube, CubeComplex, Vertex};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FixError {
    #[error("fixed sets are computed on finite complexes only")]
    NotFinite,
    #[error("fixed vertex set is not median-closed at {0}, {1}, {2}")]
    ConvexityViolation(String, String, String),
    #[error("Fix(S ∪ T) is not contained in Fix(S) ∩ Fix(T)")]
    FilteringViolation,
    #[error("orbit is not closed under generator {0:?}")]
    OrbitNotClosed(String),
    #[error("no cube of the orbit hull is invariant under every generator")]
    NoInvariantCube,
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

/// Common fixed vertices and common invariant cubes of a family of
/// automorphisms.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FixSet {
    pub vertices: Vec<Vertex>,
    pub cubes: Vec<Cube>,
}

impl FixSet {
    pub fn is_subset(&self, other: &FixSet) -> bool {
        let vs: BTreeSet<&Vertex> = other.vertices.iter().collect();
        let cs: BTreeSet<&Cube> = other.cubes.iter().collect();
        self.vertices.iter().all(|v| vs.contains(v)) && self.cubes.iter().all(|c| cs.contains(c))
    }

    pub fn intersect(&self, other: &FixSet) -> FixSet {
        let vs: BTreeSet<&Vertex> = other.vertices.iter().collect();
        let cs: BTreeSet<&Cube> = other.cubes.iter().collect();
        FixSet {
            vertices: self.vertices.iter().filter(|v| vs.contains(v)).cloned().collect(),
            cubes: self.cubes.iter().filter(|c| cs.contains(c)).cloned().collect(),
        }
    }
}

fn check_median_closed(x: &CubeComplex, vertices: &[Vertex]) -> Result<(), FixError> {
    let members: BTreeSet<&Vertex> = vertices.iter().collect();
    let violation = |a: &Vertex, b: &Vertex, c: &Vertex| {
        FixError::ConvexityViolation(x.label(a), x.label(b), x.label(c))
    };
    if let CubeComplex::Finite(f) = x {
        // candidates for median(a, b, c) are restricted to I(a, b)
        let n = f.len();
        for (i, a) in vertices.iter().enumerate() {
            for (j, b) in vertices.iter().enumerate().skip(i + 1) {
                let (ia, ib) = (a.as_index(), b.as_index());
                let dab = f.distance(ia, ib);
                let between: Vec<usize> = (0..n)
                    .filter(|&w| f.distance(ia, w) + f.distance(w, ib) == dab)
                    .collect();
                for c in vertices.iter().skip(j + 1) {
                    let ic = c.as_index();
                    let (dac, dbc) = (f.distance(ia, ic), f.distance(ib, ic));
                    let mut medians = between.iter().filter(|&&w| {
                        f.distance(ia, w) + f.distance(w, ic) == dac && f.distance(ib, w) + f.distance(w, ic) == dbc
                    });
                    match (medians.next(), medians.next()) {
                        (Some(&m), None) if members.contains(&Vertex::Index(m)) => {}
                        _ => return Err(violation(a, b, c)),
                    }
                }
            }
        }
        return Ok(());
    }
    for (i, a) in vertices.iter().enumerate() {
        for (j, b) in vertices.iter().enumerate().skip(i + 1) {
            for c in vertices.iter().skip(j + 1) {
                let m = x.median(a, b, c)?;
                if !members.contains(&m) {
                    return Err(violation(a, b, c));
                }
            }
        }
    }
    Ok(())
}

/// `Fix(S)` on a finite complex: vertices fixed by every member of `maps`
/// and cubes mapped onto themselves by every member. The vertex part is
/// checked to be median-closed.
pub fn fix_set(x: &CubeComplex, maps: &[Automorphism]) -> Result<FixSet, FixError> {
    let all = x.all_vertices().ok_or(FixError::NotFinite)?;
    let vertices: Vec<Vertex> = all
        .iter()
        .filter(|v| maps.iter().all(|g| g.apply(v) == **v))
        .cloned()
        .collect();
    check_median_closed(x, &vertices)?;
    let cubes = x
        .cubes(Some(&all))?
        .into_iter()
        .filter(|c| maps.iter().all(|g| g.apply_cube(c) == *c))
        .collect();
    Ok(FixSet { vertices, cubes })
}

/// Both sides of `Fix(S ∪ T) ⊆ Fix(S) ∩ Fix(T)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixComparison {
    pub union: FixSet,
    pub intersection: FixSet,
    pub equal: bool,
}

pub fn fix_intersection(
    x: &CubeComplex,
    s: &[Automorphism],
    t: &[Automorphism],
) -> Result<FixComparison, FixError> {
    let both: Vec<Automorphism> = s.iter().chain(t).cloned().collect();
    let union = fix_set(x, &both)?;
    let intersection = fix_set(x, s)?.intersect(&fix_set(x, t)?);
    if !union.is_subset(&intersection) {
        return Err(FixError::FilteringViolation);
    }
    let equal = union == intersection;
    Ok(FixComparison { union, intersection, equal })
}

/// A cube invariant under every generator, found inside the convex hull of
/// a finite orbit: the combinatorial stand-in for the circumcenter of a
/// bounded orbit. Cubes are tried in canonical order (smallest dimension
/// first).
pub fn bounded_orbit_fixed_cube(
    x: &CubeComplex,
    action: &GroupAction,
    orbit: &[Vertex],
) -> Result<Cube, FixError> {
    let members: BTreeSet<&Vertex> = orbit.iter().collect();
    for g in action.generators() {
        if orbit.iter().any(|v| !members.contains(&g.map.apply(v))) {
            return Err(FixError::OrbitNotClosed(g.name.clone()));
        }
    }
    let hull = x.convex_hull(orbit.iter());
    let mut candidates: BTreeSet<Cube> = BTreeSet::new();
    for u in &hull {
        for c in x.cubes_containing(u) {
            if c.min_vertex() == u && c.vertices().iter().all(|w| hull.contains(w)) {
                candidates.insert(c);
            }
        }
    }
    candidates
        .into_iter()
        .find(|c| action.generators().iter().all(|g| g.map.apply_cube(c) == *c))
        .ok_or(FixError::NoInvariantCube)
}
