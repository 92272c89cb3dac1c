use super::Vertex;

/// A cube of the complex, stored as its sorted vertex set.
///
/// A `k`-cube has `2^k` vertices. Cubes order by dimension first and then by
/// vertex list, so sorting a list of cubes puts vertices before edges before
/// squares, each group in canonical vertex order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cube {
    dim: usize,
    vertices: Vec<Vertex>,
}

impl Cube {
    /// Builds a cube from its vertex set. The number of distinct vertices
    /// must be a power of two.
    pub fn new(mut vertices: Vec<Vertex>) -> Self {
        vertices.sort();
        vertices.dedup();
        assert!(
            vertices.len().is_power_of_two(),
            "a cube has 2^k vertices, got {}",
            vertices.len()
        );
        Cube {
            dim: vertices.len().trailing_zeros() as usize,
            vertices,
        }
    }

    pub fn vertex(v: Vertex) -> Self {
        Cube {
            dim: 0,
            vertices: vec![v],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn min_vertex(&self) -> &Vertex {
        &self.vertices[0]
    }

    pub fn contains(&self, v: &Vertex) -> bool {
        self.vertices.binary_search(v).is_ok()
    }

    /// Image of the cube under a vertex map.
    pub fn map(&self, f: impl Fn(&Vertex) -> Vertex) -> Cube {
        Cube::new(self.vertices.iter().map(f).collect())
    }
}
