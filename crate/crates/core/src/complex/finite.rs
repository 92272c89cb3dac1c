use std::collections::{HashMap, VecDeque};
use std::sync::OnceLock;

use fixedbitset::FixedBitSet;

use super::{ComplexError, Cube, Vertex};

/// Largest vertex count for which an all-pairs distance table is cached.
const DISTANCE_TABLE_LIMIT: usize = 4096;
/// Largest vertex count for which median verification tabulates intervals.
const INTERVAL_TABLE_LIMIT: usize = 512;

/// Outcome of [`FiniteComplex::verify_median_graph`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MedianCheck {
    Ok,
    Disconnected,
    /// First triple `(x, y, z)` with `x <= y <= z` whose number of medians is
    /// not exactly one.
    Violation {
        triple: (usize, usize, usize),
        medians: usize,
    },
}

impl MedianCheck {
    pub fn is_ok(&self) -> bool {
        matches!(self, MedianCheck::Ok)
    }
}

/// Θ-classes of the edge set. Class ids follow the canonical order of their
/// representative (smallest) edge.
#[derive(Clone, Debug)]
pub(crate) struct ThetaClasses {
    pub(crate) edge_class: Vec<usize>,
    pub(crate) members: Vec<Vec<usize>>,
}

#[derive(Clone, Debug)]
struct CubeTable {
    cubes: Vec<Cube>,
    containing: Vec<Vec<usize>>,
    dimension: usize,
}

/// An explicit finite graph. Vertices are named; the canonical order is the
/// input order of the names.
#[derive(Clone, Debug)]
pub struct FiniteComplex {
    names: Vec<String>,
    index: HashMap<String, usize>,
    adjacency: Vec<Vec<usize>>,
    edges: Vec<(usize, usize)>,
    edge_index: HashMap<(usize, usize), usize>,
    distances: OnceLock<Option<Vec<u32>>>,
    theta: OnceLock<ThetaClasses>,
    cubes: OnceLock<CubeTable>,
}

impl FiniteComplex {
    /// Builds the graph from vertex names and an edge list given by name.
    ///
    /// Rejects empty vertex sets, duplicate names, dangling or repeated
    /// edges, loops and disconnected graphs. Median verification is a
    /// separate step.
    pub fn new<S: AsRef<str>>(names: &[S], edges: &[(S, S)]) -> Result<Self, ComplexError> {
        let names: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        let mut index = HashMap::with_capacity(names.len());
        for (i, name) in names.iter().enumerate() {
            if index.insert(name.clone(), i).is_some() {
                return Err(ComplexError::Invalid(format!("duplicate vertex name {name:?}")));
            }
        }
        let mut pairs = Vec::with_capacity(edges.len());
        for (k, (a, b)) in edges.iter().enumerate() {
            let lookup = |s: &str| {
                index.get(s).copied().ok_or_else(|| {
                    ComplexError::Invalid(format!("edges[{k}] references unknown vertex {s:?}"))
                })
            };
            pairs.push((lookup(a.as_ref())?, lookup(b.as_ref())?));
        }
        Self::from_indices(names, &pairs)
    }

    pub fn from_indices(names: Vec<String>, pairs: &[(usize, usize)]) -> Result<Self, ComplexError> {
        let n = names.len();
        if n == 0 {
            return Err(ComplexError::Invalid("a complex needs at least one vertex".into()));
        }
        let index: HashMap<String, usize> =
            names.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
        if index.len() != n {
            return Err(ComplexError::Invalid("duplicate vertex names".into()));
        }
        let mut adjacency = vec![Vec::new(); n];
        let mut edges = Vec::with_capacity(pairs.len());
        for (k, &(a, b)) in pairs.iter().enumerate() {
            if a >= n || b >= n {
                return Err(ComplexError::Invalid(format!("edges[{k}] is out of range")));
            }
            if a == b {
                return Err(ComplexError::Invalid(format!("edges[{k}] is a loop at {:?}", names[a])));
            }
            edges.push((a.min(b), a.max(b)));
            adjacency[a].push(b);
            adjacency[b].push(a);
        }
        edges.sort_unstable();
        if let Some(w) = edges.windows(2).find(|w| w[0] == w[1]) {
            return Err(ComplexError::Invalid(format!(
                "repeated edge {:?}-{:?}",
                names[w[0].0], names[w[0].1]
            )));
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        let edge_index = edges.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        let complex = FiniteComplex {
            names,
            index,
            adjacency,
            edges,
            edge_index,
            distances: OnceLock::new(),
            theta: OnceLock::new(),
            cubes: OnceLock::new(),
        };
        if complex.bfs(0).iter().any(|&d| d == u32::MAX) {
            return Err(ComplexError::Invalid("the graph is disconnected".into()));
        }
        Ok(complex)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn neighbors(&self, i: usize) -> &[usize] {
        &self.adjacency[i]
    }

    /// Undirected edges as `(a, b)` with `a < b`, sorted.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_id(&self, a: usize, b: usize) -> Option<usize> {
        self.edge_index.get(&(a.min(b), a.max(b))).copied()
    }

    pub fn is_adjacent(&self, a: usize, b: usize) -> bool {
        self.adjacency[a].binary_search(&b).is_ok()
    }

    fn bfs(&self, source: usize) -> Vec<u32> {
        let mut dist = vec![u32::MAX; self.len()];
        dist[source] = 0;
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            for &w in &self.adjacency[u] {
                if dist[w] == u32::MAX {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    fn distance_table(&self) -> Option<&[u32]> {
        self.distances
            .get_or_init(|| {
                let n = self.len();
                (n <= DISTANCE_TABLE_LIMIT).then(|| (0..n).flat_map(|s| self.bfs(s)).collect())
            })
            .as_deref()
    }

    pub fn distance(&self, a: usize, b: usize) -> usize {
        match self.distance_table() {
            Some(table) => table[a * self.len() + b] as usize,
            None => self.bfs(a)[b] as usize,
        }
    }

    fn in_interval(&self, x: usize, w: usize, y: usize) -> bool {
        self.distance(x, w) + self.distance(w, y) == self.distance(x, y)
    }

    /// Vertices lying on all three pairwise intervals of `x`, `y`, `z`.
    pub fn medians(&self, x: usize, y: usize, z: usize) -> Vec<usize> {
        (0..self.len())
            .filter(|&w| self.in_interval(x, w, y) && self.in_interval(y, w, z) && self.in_interval(x, w, z))
            .collect()
    }

    /// Checks that every vertex triple has exactly one median. Triples are
    /// scanned as `x <= y <= z` in lexicographic order.
    pub fn verify_median_graph(&self) -> MedianCheck {
        let n = self.len();
        if self.bfs(0).iter().any(|&d| d == u32::MAX) {
            return MedianCheck::Disconnected;
        }
        if n <= INTERVAL_TABLE_LIMIT {
            let intervals: Vec<FixedBitSet> = (0..n * n)
                .map(|k| {
                    let (x, y) = (k / n, k % n);
                    let mut set = FixedBitSet::with_capacity(n);
                    for w in 0..n {
                        if self.in_interval(x, w, y) {
                            set.insert(w);
                        }
                    }
                    set
                })
                .collect();
            let mut scratch = FixedBitSet::with_capacity(n);
            for x in 0..n {
                for y in x..n {
                    for z in y..n {
                        scratch.clone_from(&intervals[x * n + y]);
                        scratch.intersect_with(&intervals[y * n + z]);
                        let medians = scratch.intersection_count(&intervals[x * n + z]);
                        if medians != 1 {
                            return MedianCheck::Violation { triple: (x, y, z), medians };
                        }
                    }
                }
            }
        } else {
            for x in 0..n {
                for y in x..n {
                    for z in y..n {
                        let medians = self.medians(x, y, z).len();
                        if medians != 1 {
                            return MedianCheck::Violation { triple: (x, y, z), medians };
                        }
                    }
                }
            }
        }
        MedianCheck::Ok
    }

    pub(crate) fn theta_classes(&self) -> &ThetaClasses {
        self.theta.get_or_init(|| {
            let m = self.edges.len();
            let mut parent: Vec<usize> = (0..m).collect();
            fn find(parent: &mut [usize], mut x: usize) -> usize {
                while parent[x] != x {
                    parent[x] = parent[parent[x]];
                    x = parent[x];
                }
                x
            }
            for i in 0..m {
                let (a, b) = self.edges[i];
                for j in i + 1..m {
                    let (c, d) = self.edges[j];
                    let related = crate::hyperplane::theta_by_distances(
                        self.distance(a, c),
                        self.distance(b, d),
                        self.distance(a, d),
                        self.distance(b, c),
                    );
                    if related {
                        let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                        if ri != rj {
                            // keep the smaller edge as root so roots are class representatives
                            parent[ri.max(rj)] = ri.min(rj);
                        }
                    }
                }
            }
            let mut class_of_root = HashMap::new();
            let mut edge_class = vec![0; m];
            let mut members: Vec<Vec<usize>> = Vec::new();
            for e in 0..m {
                let root = find(&mut parent, e);
                let class = *class_of_root.entry(root).or_insert_with(|| {
                    members.push(Vec::new());
                    members.len() - 1
                });
                edge_class[e] = class;
                members[class].push(e);
            }
            ThetaClasses { edge_class, members }
        })
    }

    /// Canonical representative edge `(tail, head)` of the Θ-class of edge
    /// `{a, b}`.
    pub(crate) fn class_representative(&self, a: usize, b: usize) -> (usize, usize) {
        let e = self
            .edge_id(a, b)
            .unwrap_or_else(|| panic!("{:?}-{:?} is not an edge", self.names[a], self.names[b]));
        let classes = self.theta_classes();
        self.edges[classes.members[classes.edge_class[e]][0]]
    }

    /// Number of Θ-classes.
    pub fn hyperplane_count(&self) -> usize {
        self.theta_classes().members.len()
    }

    /// Member edges of the Θ-class whose representative is `(tail, head)`.
    pub fn class_members(&self, tail: usize, head: usize) -> Vec<(usize, usize)> {
        let classes = self.theta_classes();
        let e = self.edge_id(tail, head).expect("representative edge");
        classes.members[classes.edge_class[e]]
            .iter()
            .map(|&k| self.edges[k])
            .collect()
    }

    fn cube_table(&self) -> &CubeTable {
        self.cubes.get_or_init(|| {
            let mut cubes = Vec::new();
            for u in 0..self.len() {
                self.cubes_with_min_vertex(u, &mut cubes);
            }
            cubes.sort();
            cubes.dedup();
            let mut containing = vec![Vec::new(); self.len()];
            for (k, cube) in cubes.iter().enumerate() {
                for v in cube.vertices() {
                    containing[v.as_index()].push(k);
                }
            }
            let dimension = cubes.iter().map(Cube::dim).max().unwrap_or(0);
            CubeTable { cubes, containing, dimension }
        })
    }

    /// Enumerates cubes whose smallest vertex is `u` by growing families of
    /// pairwise square-spanning neighbours of `u`.
    fn cubes_with_min_vertex(&self, u: usize, out: &mut Vec<Cube>) {
        let up: Vec<usize> = self.adjacency[u].iter().copied().filter(|&x| x > u).collect();
        let k = up.len();
        let spans_square = |x: usize, y: usize| {
            self.adjacency[x]
                .iter()
                .any(|&w| w != u && self.is_adjacent(w, y) && self.distance(u, w) == 2)
        };
        let mut compatible = vec![vec![false; k]; k];
        for i in 0..k {
            for j in i + 1..k {
                let ok = spans_square(up[i], up[j]);
                compatible[i][j] = ok;
                compatible[j][i] = ok;
            }
        }
        out.push(Cube::vertex(Vertex::Index(u)));
        // depth-first over cliques of the compatibility graph, in increasing index order
        let mut stack: Vec<Vec<usize>> = (0..k).map(|i| vec![i]).collect();
        stack.reverse();
        while let Some(clique) = stack.pop() {
            let dirs: Vec<usize> = clique.iter().map(|&i| up[i]).collect();
            let Some(corners) = self.span_cube(u, &dirs) else {
                continue;
            };
            if corners.iter().all(|&c| c >= u) {
                out.push(Cube::new(corners.into_iter().map(Vertex::Index).collect()));
            }
            let last = *clique.last().unwrap();
            for next in (last + 1..k).rev() {
                if clique.iter().all(|&i| compatible[i][next]) {
                    let mut grown = clique.clone();
                    grown.push(next);
                    stack.push(grown);
                }
            }
        }
    }

    /// Corner `v_A` for every subset `A` of `dirs` (bitmask order), or `None`
    /// if the neighbours do not span an induced hypercube.
    fn span_cube(&self, u: usize, dirs: &[usize]) -> Option<Vec<usize>> {
        let k = dirs.len();
        let size = 1usize << k;
        let mut corner = vec![usize::MAX; size];
        corner[0] = u;
        for (i, &x) in dirs.iter().enumerate() {
            corner[1 << i] = x;
        }
        for mask in 1..size {
            if mask.count_ones() < 2 {
                continue;
            }
            let hi = usize::BITS - 1 - mask.leading_zeros();
            let a = mask & !(1 << hi);
            let lo = usize::BITS - 1 - a.leading_zeros();
            let b = mask & !(1 << lo);
            let both = mask & !(1 << hi) & !(1 << lo);
            let (p, q, r) = (corner[a], corner[b], corner[both]);
            let level = mask.count_ones() as usize;
            let mut found = self.adjacency[p]
                .iter()
                .copied()
                .filter(|&w| w != r && self.is_adjacent(w, q) && self.distance(u, w) == level);
            let w = found.next()?;
            if found.next().is_some() {
                return None;
            }
            corner[mask] = w;
        }
        let mut sorted = corner.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != size {
            return None;
        }
        for s in 0..size {
            for t in s + 1..size {
                let hamming_one = (s ^ t).count_ones() == 1;
                if hamming_one != self.is_adjacent(corner[s], corner[t]) {
                    return None;
                }
            }
        }
        Some(corner)
    }

    /// Every cube of the complex in canonical order.
    pub fn cubes(&self) -> &[Cube] {
        &self.cube_table().cubes
    }

    pub fn cubes_containing(&self, i: usize) -> Vec<Cube> {
        let table = self.cube_table();
        table.containing[i].iter().map(|&k| table.cubes[k].clone()).collect()
    }

    /// Maximal cube dimension.
    pub fn dimension(&self) -> usize {
        self.cube_table().dimension
    }

    /// Same vertex names in the same order and the same edge set.
    pub fn same_structure(&self, other: &FiniteComplex) -> bool {
        self.names == other.names && self.edges == other.edges
    }
}
