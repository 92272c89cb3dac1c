//! Generators of the full automorphism group of a small finite complex.

use std::collections::{BTreeMap, VecDeque};

use super::IoError;
use crate::action::Automorphism;
use crate::complex::{CubeComplex, FiniteComplex};

pub const MAX_SEARCH_VERTICES: usize = 60;

/// Stable colouring: starts from the sorted distance profile of each vertex
/// and refines by the multiset of (distance, colour) pairs.
fn stable_colours(f: &FiniteComplex) -> Vec<usize> {
    let n = f.len();
    let relabel = |keys: Vec<Vec<usize>>| -> Vec<usize> {
        let ids: BTreeMap<&Vec<usize>, usize> = {
            let mut sorted: Vec<&Vec<usize>> = keys.iter().collect();
            sorted.sort();
            sorted.dedup();
            sorted.into_iter().enumerate().map(|(i, k)| (k, i)).collect()
        };
        keys.iter().map(|k| ids[k]).collect()
    };
    let mut colours = relabel(
        (0..n)
            .map(|v| {
                let mut p: Vec<usize> = (0..n).map(|w| f.distance(v, w)).collect();
                p.sort_unstable();
                p
            })
            .collect(),
    );
    loop {
        let classes = colours.iter().max().map_or(0, |m| m + 1);
        let keys: Vec<Vec<usize>> = (0..n)
            .map(|v| {
                let mut pairs: Vec<usize> = (0..n).map(|w| f.distance(v, w) * n + colours[w]).collect();
                pairs.sort_unstable();
                let mut key = vec![colours[v]];
                key.extend(pairs);
                key
            })
            .collect();
        let next = relabel(keys);
        let refined = next.iter().max().map_or(0, |m| m + 1);
        colours = next;
        if refined == classes {
            return colours;
        }
    }
}

struct Search<'a> {
    f: &'a FiniteComplex,
    colours: Vec<usize>,
    /// BFS order from vertex 0 with parents, used to pick images.
    order: Vec<usize>,
    parent: Vec<Option<usize>>,
}

impl Search<'_> {
    fn consistent(&self, map: &[Option<usize>], u: usize, image: usize) -> bool {
        let f = self.f;
        self.colours[u] == self.colours[image]
            && map.iter().enumerate().all(|(w, m)| match m {
                Some(mw) => *mw != image && f.distance(u, w) == f.distance(image, *mw),
                None => true,
            })
    }

    /// Extends the partial map to an automorphism, assigning unassigned
    /// vertices in BFS order.
    fn extend(&self, map: &mut Vec<Option<usize>>, position: usize) -> bool {
        let Some(&u) = self.order[position..].iter().find(|&&u| map[u].is_none()) else {
            return true;
        };
        let next = self.order.iter().position(|&w| w == u).expect("ordered") + 1;
        let candidates: Vec<usize> = match self.parent[u].and_then(|p| map[p]) {
            Some(image_of_parent) => self.f.neighbors(image_of_parent).to_vec(),
            None => (0..self.f.len()).collect(),
        };
        for c in candidates {
            if self.consistent(map, u, c) {
                map[u] = Some(c);
                if self.extend(map, next) {
                    return true;
                }
                map[u] = None;
            }
        }
        false
    }
}

fn orbit_of(generators: &[Vec<usize>], start: usize, n: usize) -> Vec<bool> {
    let mut seen = vec![false; n];
    seen[start] = true;
    let mut queue = VecDeque::from([start]);
    while let Some(v) = queue.pop_front() {
        for g in generators {
            if !seen[g[v]] {
                seen[g[v]] = true;
                queue.push_back(g[v]);
            }
        }
    }
    seen
}

/// Generators of the automorphism group, named `g0`, `g1`, ...
///
/// Works down a stabilizer chain along the BFS order: for each base point,
/// one automorphism is found for every image outside the orbit spanned by
/// the generators already known to fix the earlier base points. An empty
/// list means the group is trivial.
pub fn automorphism_search(x: &CubeComplex) -> Result<Vec<(String, Automorphism)>, IoError> {
    let f = x
        .as_finite()
        .ok_or_else(|| IoError::InvalidArguments("automorphism search needs a finite complex".into()))?;
    let n = f.len();
    if n > MAX_SEARCH_VERTICES {
        return Err(IoError::SizeExceeded {
            found: n,
            max: MAX_SEARCH_VERTICES,
        });
    }
    let mut order = vec![0];
    let mut parent = vec![None; n];
    let mut visited = vec![false; n];
    visited[0] = true;
    let mut i = 0;
    while i < order.len() {
        let v = order[i];
        for &w in f.neighbors(v) {
            if !visited[w] {
                visited[w] = true;
                parent[w] = Some(v);
                order.push(w);
            }
        }
        i += 1;
    }
    let search = Search {
        f,
        colours: stable_colours(f),
        order,
        parent,
    };
    // generators grouped by the level of the chain they were found at
    let mut levels: Vec<Vec<Vec<usize>>> = vec![Vec::new(); n];
    for level in (0..n).rev() {
        let base = search.order[level];
        let fixed = &search.order[..level];
        let mut known: Vec<Vec<usize>> = levels[level..].iter().flatten().cloned().collect();
        let mut orbit = orbit_of(&known, base, n);
        for c in 0..n {
            if orbit[c] {
                continue;
            }
            let mut map: Vec<Option<usize>> = vec![None; n];
            for &b in fixed {
                map[b] = Some(b);
            }
            if !search.consistent(&map, base, c) {
                continue;
            }
            map[base] = Some(c);
            if search.extend(&mut map, 0) {
                let g: Vec<usize> = map.into_iter().map(|m| m.expect("complete")).collect();
                levels[level].push(g.clone());
                known.push(g);
                orbit = orbit_of(&known, base, n);
            }
        }
    }
    Ok(levels
        .into_iter()
        .flatten()
        .enumerate()
        .map(|(i, g)| (format!("g{i}"), Automorphism::Permutation(g)))
        .collect())
}
