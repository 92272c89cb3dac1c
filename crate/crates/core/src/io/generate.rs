//! Seeded generators for the fuzz corpus. Every family is median by
//! construction and every output is re-verified.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::automorphism::automorphism_search;
use super::schema::{ActionDocument, ComplexDocument};
use super::IoError;
use crate::complex::{CubeComplex, FiniteComplex, Vertex};

const MAX_TREE: usize = 50;
const MAX_WINDOW: i64 = 8;
const MAX_STAIRCASE: usize = 60;
const MAX_PRODUCT: usize = 60;
const RETRIES: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Tree,
    Staircase,
    Product,
}

impl Family {
    pub const ALL: [Family; 3] = [Family::Tree, Family::Staircase, Family::Product];
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Tree => "tree",
            Family::Staircase => "staircase",
            Family::Product => "product",
        })
    }
}

impl FromStr for Family {
    type Err = IoError;

    fn from_str(s: &str) -> Result<Self, IoError> {
        match s {
            "tree" => Ok(Family::Tree),
            "staircase" => Ok(Family::Staircase),
            "product" => Ok(Family::Product),
            _ => Err(IoError::InvalidArguments(format!("unknown family {s:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Expectation {
    FixedPointExpected,
    WitnessExpected,
    Unknown,
}

/// A generated complex and the number of vertices the median-closure repair
/// had to add.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generated {
    pub document: ComplexDocument,
    pub repairs: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FuzzCase {
    pub seed: u64,
    pub family: Family,
    pub complex: ComplexDocument,
    pub action: ActionDocument,
    pub expectation: Expectation,
}

/// Seed of case `index` in a corpus started from `seed0`.
pub fn case_seed(seed0: u64, index: u64) -> u64 {
    let mut z = seed0.wrapping_add(index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

struct Graph {
    names: Vec<String>,
    edges: Vec<(usize, usize)>,
    repairs: usize,
}

impl Graph {
    fn len(&self) -> usize {
        self.names.len()
    }
}

fn random_tree(rng: &mut ChaCha8Rng, max: usize) -> Graph {
    let n = rng.gen_range(2..=max.clamp(2, MAX_TREE));
    let code: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
    let mut degree = vec![1usize; n];
    for &c in &code {
        degree[c] += 1;
    }
    let mut leaves: BTreeSet<usize> = (0..n).filter(|&i| degree[i] == 1).collect();
    let mut edges = Vec::with_capacity(n - 1);
    for &c in &code {
        let leaf = leaves.pop_first().expect("a Prüfer code always has a leaf");
        edges.push((leaf, c));
        degree[c] -= 1;
        if degree[c] == 1 {
            leaves.insert(c);
        }
    }
    let last: Vec<usize> = leaves.into_iter().collect();
    edges.push((last[0], last[1]));
    Graph {
        names: (0..n).map(|i| format!("v{i}")).collect(),
        edges,
        repairs: 0,
    }
}

fn median3(a: i64, b: i64, c: i64) -> i64 {
    a.max(b).min(a.min(b).max(c))
}

fn random_staircase(rng: &mut ChaCha8Rng, max: usize) -> Graph {
    let max = max.clamp(2, MAX_STAIRCASE);
    let (width, mut heights) = loop {
        let width = rng.gen_range(1..=MAX_WINDOW.min(max as i64));
        let mut heights = vec![rng.gen_range(1..=MAX_WINDOW)];
        for i in 1..width as usize {
            let h = rng.gen_range(1..=heights[i - 1]);
            heights.push(h);
        }
        if heights.iter().sum::<i64>() >= 2 {
            break (width, heights);
        }
    };
    while heights.iter().sum::<i64>() as usize > max {
        let last = heights.len() - 1;
        if heights[last] > 1 || heights.len() == 1 {
            heights[last] -= 1;
        } else {
            heights.pop();
        }
    }
    let mut points: BTreeSet<(i64, i64)> = (0..width)
        .zip(&heights)
        .flat_map(|(x, &h)| (0..h).map(move |y| (x, y)))
        .collect();
    let before = points.len();
    loop {
        let list: Vec<(i64, i64)> = points.iter().copied().collect();
        let mut added = Vec::new();
        for (i, a) in list.iter().enumerate() {
            for (j, b) in list.iter().enumerate().skip(i + 1) {
                for c in list.iter().skip(j + 1) {
                    let m = (median3(a.0, b.0, c.0), median3(a.1, b.1, c.1));
                    if !points.contains(&m) {
                        added.push(m);
                    }
                }
            }
        }
        if added.is_empty() {
            break;
        }
        points.extend(added);
    }
    let list: Vec<(i64, i64)> = points.iter().copied().collect();
    let mut edges = Vec::new();
    for (i, a) in list.iter().enumerate() {
        for (j, b) in list.iter().enumerate().skip(i + 1) {
            if (a.0 - b.0).abs() + (a.1 - b.1).abs() == 1 {
                edges.push((i, j));
            }
        }
    }
    Graph {
        names: list.iter().map(|(x, y)| format!("p{x}_{y}")).collect(),
        edges,
        repairs: points.len() - before,
    }
}

fn random_factor(rng: &mut ChaCha8Rng, max: usize) -> Graph {
    if rng.gen_bool(0.5) {
        random_tree(rng, max)
    } else {
        random_staircase(rng, max)
    }
}

fn product(a: &Graph, b: &Graph) -> Graph {
    let m = b.len();
    let mut names = Vec::with_capacity(a.len() * m);
    for p in &a.names {
        for q in &b.names {
            names.push(format!("{p}|{q}"));
        }
    }
    let mut edges = Vec::new();
    for &(u, w) in &a.edges {
        for j in 0..m {
            edges.push((u * m + j, w * m + j));
        }
    }
    for i in 0..a.len() {
        for &(u, w) in &b.edges {
            edges.push((i * m + u, i * m + w));
        }
    }
    Graph {
        names,
        edges,
        repairs: a.repairs + b.repairs,
    }
}

fn random_graph(rng: &mut ChaCha8Rng, family: Family) -> Graph {
    match family {
        Family::Tree => random_tree(rng, MAX_TREE),
        Family::Staircase => random_staircase(rng, MAX_STAIRCASE),
        Family::Product => {
            let size = rng.gen_range(2..=10);
            let left = random_factor(rng, size);
            let right = random_factor(rng, MAX_PRODUCT / left.len());
            product(&left, &right)
        }
    }
}

/// A median graph from `family`, determined by `seed`.
pub fn generate_complex(seed: u64, family: Family) -> Result<Generated, IoError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut last_error = String::new();
    for _ in 0..RETRIES {
        let g = random_graph(&mut rng, family);
        let built = FiniteComplex::from_indices(g.names.clone(), &g.edges).and_then(CubeComplex::finite);
        match built {
            Ok(x) => {
                let mut document = ComplexDocument::from_complex(&x);
                if let ComplexDocument::Finite { name, .. } = &mut document {
                    *name = Some(format!("{family}-{seed:016x}"));
                }
                return Ok(Generated {
                    document,
                    repairs: g.repairs,
                });
            }
            Err(e) => last_error = e.to_string(),
        }
    }
    Err(IoError::GenerationFailed(format!(
        "{family} seed {seed} failed {RETRIES} times: {last_error}"
    )))
}

/// A corpus case: a generated complex with its full automorphism group
/// acting on it, based at the first vertex.
pub fn generate_case(seed: u64) -> Result<FuzzCase, IoError> {
    let family = Family::ALL[(ChaCha8Rng::seed_from_u64(seed ^ 0x5EED).gen_range(0..3)) as usize];
    let generated = generate_complex(seed, family)?;
    let x = generated.document.build(true)?;
    let generators = automorphism_search(&x)?;
    let action = ActionDocument::from_generators(&x, &generators, Some(&Vertex::Index(0)));
    Ok(FuzzCase {
        seed,
        family,
        complex: generated.document,
        action,
        expectation: Expectation::FixedPointExpected,
    })
}
