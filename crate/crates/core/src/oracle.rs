//! Brute-force reference implementations.
//!
//! Everything here is deliberately naive and shares no code path with the
//! algorithms it is used to check, apart from distances and `side`.

use std::collections::{BTreeSet, HashMap};

use crate::complex::{CubeComplex, FiniteComplex, Vertex};
use crate::hyperplane::{side, Hyperplane};

/// Crossing by scanning every vertex for the four sign quadrants.
pub fn crosses_brute_force(x: &CubeComplex, h1: &Hyperplane, h2: &Hyperplane) -> bool {
    let all = x.all_vertices().expect("brute force needs a finite complex");
    let mut seen = [false; 4];
    for w in &all {
        let q = 2 * (side(x, h1, w) as usize) + side(x, h2, w) as usize;
        seen[q] = true;
    }
    h1 != h2 && seen.iter().all(|&s| s)
}

/// Hyperplanes (from `hyperplanes`) whose sides differ at `a` and `b`.
pub fn separating_hyperplanes(x: &CubeComplex, hyperplanes: &[Hyperplane], a: &Vertex, b: &Vertex) -> Vec<Hyperplane> {
    hyperplanes
        .iter()
        .filter(|h| side(x, h, a) != side(x, h, b))
        .cloned()
        .collect()
}

/// Edge classes of the transitive closure of "opposite edges of a chordless
/// 4-cycle". `class[e]` is the class of `f.edges()[e]`.
pub fn square_closure_classes(f: &FiniteComplex) -> Vec<usize> {
    let m = f.edges().len();
    let mut parent: Vec<usize> = (0..m).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let union = |p: &mut Vec<usize>, a: usize, b: usize| {
        let (ra, rb) = (find(p, a), find(p, b));
        p[ra] = rb;
    };
    let n = f.len();
    // 4-cycles u - a - w - b - u with u < w, a < b, no chords
    for u in 0..n {
        for w in u + 1..n {
            if f.is_adjacent(u, w) {
                continue;
            }
            let common: Vec<usize> = f
                .neighbors(u)
                .iter()
                .copied()
                .filter(|&c| f.is_adjacent(c, w))
                .collect();
            for i in 0..common.len() {
                for j in i + 1..common.len() {
                    let (a, b) = (common[i], common[j]);
                    if f.is_adjacent(a, b) {
                        continue;
                    }
                    let id = |p: usize, q: usize| f.edge_id(p, q).unwrap();
                    union(&mut parent, id(u, a), id(b, w));
                    union(&mut parent, id(u, b), id(a, w));
                }
            }
        }
    }
    let mut relabel = HashMap::new();
    (0..m)
        .map(|e| {
            let r = find(&mut parent, e);
            let next = relabel.len();
            *relabel.entry(r).or_insert(next)
        })
        .collect()
}

/// Number of permutations of the vertex set preserving adjacency, by
/// enumerating all `n!` permutations.
pub fn automorphism_count_brute_force(f: &FiniteComplex) -> usize {
    let n = f.len();
    assert!(n <= 9, "brute force enumeration is limited to 9 vertices");
    let mut perm: Vec<usize> = (0..n).collect();
    let mut count = 0;
    loop {
        if f.edges().iter().all(|&(a, b)| f.is_adjacent(perm[a], perm[b])) {
            count += 1;
        }
        // next lexicographic permutation
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| perm[i] < perm[i + 1]) else {
            return count;
        };
        let j = (i + 1..n).rev().find(|&j| perm[j] > perm[i]).unwrap();
        perm.swap(i, j);
        perm[i + 1..].reverse();
    }
}

/// Every 3-subset of `family` whose members pairwise do not cross.
pub fn disjoint_triples_brute_force(x: &CubeComplex, family: &[Hyperplane]) -> Vec<[Hyperplane; 3]> {
    let mut out = Vec::new();
    let k = family.len();
    for i in 0..k {
        for j in i + 1..k {
            for l in j + 1..k {
                let (a, b, c) = (&family[i], &family[j], &family[l]);
                if !crosses_brute_force(x, a, b) && !crosses_brute_force(x, a, c) && !crosses_brute_force(x, b, c) {
                    out.push([a.clone(), b.clone(), c.clone()]);
                }
            }
        }
    }
    out
}

/// Group generated by permutations, enumerated by closure.
pub fn permutation_group_closure(n: usize, generators: &[Vec<usize>]) -> BTreeSet<Vec<usize>> {
    let identity: Vec<usize> = (0..n).collect();
    let mut group = BTreeSet::from([identity.clone()]);
    let mut frontier = vec![identity];
    while let Some(p) = frontier.pop() {
        for g in generators {
            let q: Vec<usize> = p.iter().map(|&i| g[i]).collect();
            if group.insert(q.clone()) {
                frontier.push(q);
            }
        }
    }
    group
}
