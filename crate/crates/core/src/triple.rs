//! Pairwise disjoint hyperplane triples in finite sets of hyperplanes.
//!
//! In a `d`-dimensional CAT(0) cube complex every set of at least
//! `d + d(d+1)` hyperplanes contains three that pairwise do not cross. The
//! search below follows the constructive argument: take a greedy maximal
//! pairwise crossing subfamily `T` (at most `d` members), send every other
//! hyperplane to the first member of `T` it misses, and look inside a
//! bucket holding at least `d + 1` hyperplanes for a non-crossing pair.
//! Tie-breaks are fixed so the output is deterministic.

use std::collections::BTreeSet;

use crate::complex::{Cube, CubeComplex};
use crate::hyperplane::{crosses, dual_hyperplanes, separates, Hyperplane, HyperplaneError};

/// Size above which a pairwise disjoint triple is guaranteed: `d + d(d+1)`.
pub fn disjoint_threshold(dimension: usize) -> usize {
    dimension + dimension * (dimension + 1)
}

/// Three pairwise non-crossing hyperplanes, plus the index of the member
/// separating the other two when there is one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DisjointTriple {
    pub triple: [Hyperplane; 3],
    pub separating: Option<usize>,
}

fn ensure_distinct(family: &[Hyperplane]) -> Result<(), HyperplaneError> {
    let set: BTreeSet<&Hyperplane> = family.iter().collect();
    if set.len() != family.len() {
        return Err(HyperplaneError::PreconditionViolated(
            "hyperplane list contains duplicates".into(),
        ));
    }
    Ok(())
}

/// Greedy scan in input order, keeping a hyperplane iff it crosses every
/// hyperplane kept so far.
pub fn max_pairwise_intersecting(
    x: &CubeComplex,
    family: &[Hyperplane],
) -> Result<Vec<Hyperplane>, HyperplaneError> {
    ensure_distinct(family)?;
    let mut kept: Vec<Hyperplane> = Vec::new();
    for h in family {
        if kept.iter().all(|k| crosses(x, h, k)) {
            kept.push(h.clone());
        }
    }
    let dimension = x.dimension();
    if kept.len() > dimension {
        return Err(HyperplaneError::DimensionViolation {
            found: kept.len(),
            dimension,
        });
    }
    Ok(kept)
}

/// For each member `J` of `family` outside `kept`, the least 1-based index
/// `i` with `J` not crossing `kept[i-1]`. Entries follow the order of
/// `family`.
pub fn bucket_map(
    x: &CubeComplex,
    family: &[Hyperplane],
    kept: &[Hyperplane],
) -> Result<Vec<(Hyperplane, usize)>, HyperplaneError> {
    let kept_set: BTreeSet<&Hyperplane> = kept.iter().collect();
    family
        .iter()
        .filter(|h| !kept_set.contains(h))
        .map(|h| {
            kept.iter()
                .position(|k| !crosses(x, h, k))
                .map(|i| (h.clone(), i + 1))
                .ok_or_else(|| {
                    HyperplaneError::Internal(format!("{h} crosses every kept hyperplane"))
                })
        })
        .collect()
}

fn first_disjoint_pair<'a>(x: &CubeComplex, bucket: &[&'a Hyperplane]) -> Option<(&'a Hyperplane, &'a Hyperplane)> {
    for i in 0..bucket.len() {
        for j in i + 1..bucket.len() {
            if !crosses(x, bucket[i], bucket[j]) {
                return Some((bucket[i], bucket[j]));
            }
        }
    }
    None
}

/// Index of the member separating the other two, if any.
pub fn separating_member(x: &CubeComplex, triple: &[Hyperplane; 3]) -> Result<Option<usize>, HyperplaneError> {
    for i in 0..3 {
        let (a, b) = (&triple[(i + 1) % 3], &triple[(i + 2) % 3]);
        if separates(x, &triple[i], a, b)? {
            return Ok(Some(i));
        }
    }
    Ok(None)
}

/// Finds three pairwise non-crossing hyperplanes in `family`.
///
/// At or above [`disjoint_threshold`] the result is `(J_j, H1, H2)` where
/// `J_j` is the kept hyperplane of the first bucket with at least `d + 1`
/// members and `(H1, H2)` is the first non-crossing pair of that bucket in
/// input order; failure there is an [`HyperplaneError::Internal`] error.
/// Below the threshold any bucket containing a non-crossing pair is used,
/// and [`HyperplaneError::NotFound`] is returned otherwise.
pub fn find_disjoint_triple(
    x: &CubeComplex,
    family: &[Hyperplane],
) -> Result<DisjointTriple, HyperplaneError> {
    let kept = max_pairwise_intersecting(x, family)?;
    if family.len() < 3 {
        return Err(HyperplaneError::NotFound);
    }
    let dimension = x.dimension();
    let above = family.len() >= disjoint_threshold(dimension);
    let assignment = bucket_map(x, family, &kept)?;
    let mut buckets: Vec<Vec<&Hyperplane>> = vec![Vec::new(); kept.len()];
    for (h, i) in &assignment {
        buckets[i - 1].push(h);
    }
    let finish = |j: usize, pair: (&Hyperplane, &Hyperplane)| -> Result<DisjointTriple, HyperplaneError> {
        let triple = [kept[j].clone(), pair.0.clone(), pair.1.clone()];
        let separating = separating_member(x, &triple)?;
        Ok(DisjointTriple { triple, separating })
    };
    if let Some(j) = buckets.iter().position(|b| b.len() > dimension) {
        return match first_disjoint_pair(x, &buckets[j]) {
            Some(pair) => finish(j, pair),
            None => Err(HyperplaneError::Internal(format!(
                "bucket {} holds {} pairwise crossing hyperplanes in dimension {dimension}",
                j + 1,
                buckets[j].len()
            ))),
        };
    }
    if above {
        return Err(HyperplaneError::Internal(format!(
            "{} hyperplanes but no bucket reaches {}",
            family.len(),
            dimension + 1
        )));
    }
    for (j, bucket) in buckets.iter().enumerate() {
        if let Some(pair) = first_disjoint_pair(x, bucket) {
            return finish(j, pair);
        }
    }
    Err(HyperplaneError::NotFound)
}

/// A cube whose dual hyperplanes are exactly `family`, for a pairwise
/// crossing family of at most `d` hyperplanes in a finite complex. The
/// canonically first such cube is returned.
pub fn helly_common_cube(x: &CubeComplex, family: &[Hyperplane]) -> Result<Cube, HyperplaneError> {
    ensure_distinct(family)?;
    let vertices = x.all_vertices().ok_or_else(|| {
        HyperplaneError::PreconditionViolated("common cube search needs a finite complex".into())
    })?;
    for i in 0..family.len() {
        for j in i + 1..family.len() {
            if !crosses(x, &family[i], &family[j]) {
                return Err(HyperplaneError::PreconditionViolated(format!(
                    "{} and {} do not cross",
                    family[i], family[j]
                )));
            }
        }
    }
    if family.len() > x.dimension() {
        return Err(HyperplaneError::DimensionViolation {
            found: family.len(),
            dimension: x.dimension(),
        });
    }
    let mut wanted = family.to_vec();
    wanted.sort();
    let cubes = x
        .cubes(Some(&vertices))
        .map_err(|e| HyperplaneError::PreconditionViolated(e.to_string()))?;
    cubes
        .into_iter()
        .filter(|c| c.dim() == wanted.len())
        .find(|c| dual_hyperplanes(x, c) == wanted)
        .ok_or(HyperplaneError::HellyViolation(wanted))
}
