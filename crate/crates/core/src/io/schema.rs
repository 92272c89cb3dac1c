//! JSON documents for complexes, actions and hyperplane lists.

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::IoError;
use crate::action::{Automorphism, GroupAction};
use crate::complex::{CubeComplex, FiniteComplex, OrientedEdge, Vertex};
use crate::hyperplane::{hyperplane_of, Hyperplane};

/// A complex as stored on disk.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", try_from = "RawComplex")]
pub enum ComplexDocument {
    Finite {
        vertices: Vec<String>,
        edges: Vec<[String; 2]>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        name: Option<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        dimension: Option<usize>,
    },
    Lattice {
        rank: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        name: Option<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        dimension: Option<usize>,
    },
    Product {
        factors: Vec<ComplexDocument>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        name: Option<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        dimension: Option<usize>,
    },
}

/// Parses `text`, reporting the JSON path of the failing node next to
/// serde's own line and column.
fn parse_with_path<T: serde::de::DeserializeOwned>(text: &str, what: &str) -> Result<T, IoError> {
    let mut de = serde_json::Deserializer::from_str(text);
    let value = serde_path_to_error::deserialize(&mut de)
        .map_err(|e| IoError::Json(format!("{what} at ${}: {}", path_suffix(e.path()), e.inner())))?;
    de.end().map_err(|e| IoError::Json(format!("{what}: {e}")))?;
    Ok(value)
}

fn path_suffix(path: &serde_path_to_error::Path) -> String {
    let p = path.to_string();
    match p.as_str() {
        "." => String::new(),
        _ if p.starts_with('[') => p,
        _ => format!(".{p}"),
    }
}

// Flat mirrors of the tagged documents. Parsing goes through them so that
// unknown keys and misplaced fields are reported with a line and column.
#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawComplex {
    #[serde(rename = "type")]
    kind: String,
    vertices: Option<Vec<String>>,
    edges: Option<Vec<[String; 2]>>,
    rank: Option<usize>,
    factors: Option<Vec<ComplexDocument>>,
    name: Option<String>,
    dimension: Option<usize>,
}

fn misplaced(kind: &str, fields: &[(&str, bool)]) -> Result<(), String> {
    match fields.iter().find(|(_, present)| *present) {
        Some((field, _)) => Err(format!("field `{field}` is not allowed for type `{kind}`")),
        None => Ok(()),
    }
}

impl TryFrom<RawComplex> for ComplexDocument {
    type Error = String;

    fn try_from(raw: RawComplex) -> Result<Self, String> {
        let missing = |field: &str| format!("type `{}` requires field `{field}`", raw.kind);
        let (name, dimension) = (raw.name.clone(), raw.dimension);
        match raw.kind.as_str() {
            "finite" => {
                misplaced("finite", &[("rank", raw.rank.is_some()), ("factors", raw.factors.is_some())])?;
                Ok(ComplexDocument::Finite {
                    vertices: raw.vertices.ok_or_else(|| missing("vertices"))?,
                    edges: raw.edges.ok_or_else(|| missing("edges"))?,
                    name,
                    dimension,
                })
            }
            "lattice" => {
                misplaced(
                    "lattice",
                    &[
                        ("vertices", raw.vertices.is_some()),
                        ("edges", raw.edges.is_some()),
                        ("factors", raw.factors.is_some()),
                    ],
                )?;
                Ok(ComplexDocument::Lattice {
                    rank: raw.rank.ok_or_else(|| missing("rank"))?,
                    name,
                    dimension,
                })
            }
            "product" => {
                misplaced(
                    "product",
                    &[
                        ("vertices", raw.vertices.is_some()),
                        ("edges", raw.edges.is_some()),
                        ("rank", raw.rank.is_some()),
                    ],
                )?;
                Ok(ComplexDocument::Product {
                    factors: raw.factors.ok_or_else(|| missing("factors"))?,
                    name,
                    dimension,
                })
            }
            other => Err(format!("unknown complex type `{other}`, expected finite, lattice or product")),
        }
    }
}

impl ComplexDocument {
    pub fn parse(text: &str) -> Result<Self, IoError> {
        parse_with_path(text, "complex document")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("documents serialize")
    }

    fn declared_dimension(&self) -> Option<usize> {
        match self {
            ComplexDocument::Finite { dimension, .. }
            | ComplexDocument::Lattice { dimension, .. }
            | ComplexDocument::Product { dimension, .. } => *dimension,
        }
    }

    /// Builds the complex. With `checked`, finite parts must be median
    /// graphs.
    pub fn build(&self, checked: bool) -> Result<CubeComplex, IoError> {
        let complex = match self {
            ComplexDocument::Finite { vertices, edges, .. } => {
                let pairs: Vec<(&str, &str)> = edges.iter().map(|[a, b]| (a.as_str(), b.as_str())).collect();
                let names: Vec<&str> = vertices.iter().map(String::as_str).collect();
                let f = FiniteComplex::new(&names, &pairs)?;
                if checked {
                    CubeComplex::finite(f)?
                } else {
                    CubeComplex::finite_unchecked(f)
                }
            }
            ComplexDocument::Lattice { rank, .. } => {
                if *rank == 0 {
                    return Err(IoError::Schema("lattice rank must be positive".into()));
                }
                CubeComplex::lattice(*rank)
            }
            ComplexDocument::Product { factors, .. } => {
                if factors.len() != 2 {
                    return Err(IoError::Schema(format!(
                        "a product takes exactly 2 factors, got {}",
                        factors.len()
                    )));
                }
                CubeComplex::product(factors[0].build(checked)?, factors[1].build(checked)?)
            }
        };
        if let Some(d) = self.declared_dimension() {
            if d != complex.dimension() {
                return Err(IoError::Schema(format!(
                    "declared dimension {d} but the complex has dimension {}",
                    complex.dimension()
                )));
            }
        }
        Ok(complex)
    }

    pub fn from_complex(x: &CubeComplex) -> Self {
        match x {
            CubeComplex::Finite(f) => ComplexDocument::Finite {
                vertices: f.names().to_vec(),
                edges: f
                    .edges()
                    .iter()
                    .map(|&(a, b)| [f.name(a).to_string(), f.name(b).to_string()])
                    .collect(),
                name: None,
                dimension: None,
            },
            CubeComplex::Lattice { rank } => ComplexDocument::Lattice {
                rank: *rank,
                name: None,
                dimension: None,
            },
            CubeComplex::Product(a, b) => ComplexDocument::Product {
                factors: vec![Self::from_complex(a), Self::from_complex(b)],
                name: None,
                dimension: None,
            },
        }
    }
}

/// A generator as stored on disk.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", try_from = "RawGenerator")]
pub enum GeneratorDocument {
    /// Vertex name to vertex name; unlisted vertices are fixed.
    Permutation { map: IndexMap<String, String> },
    Affine {
        signs: Vec<i64>,
        perm: Vec<usize>,
        translate: Vec<i64>,
    },
    Product {
        factors: Vec<GeneratorDocument>,
        #[serde(default)]
        swap: bool,
    },
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGenerator {
    kind: String,
    map: Option<IndexMap<String, String>>,
    signs: Option<Vec<i64>>,
    perm: Option<Vec<usize>>,
    translate: Option<Vec<i64>>,
    factors: Option<Vec<GeneratorDocument>>,
    swap: Option<bool>,
}

impl TryFrom<RawGenerator> for GeneratorDocument {
    type Error = String;

    fn try_from(raw: RawGenerator) -> Result<Self, String> {
        let missing = |field: &str| format!("kind `{}` requires field `{field}`", raw.kind);
        let affine_fields = raw.signs.is_some() || raw.perm.is_some() || raw.translate.is_some();
        match raw.kind.as_str() {
            "permutation" => {
                misplaced(
                    "permutation",
                    &[
                        ("signs/perm/translate", affine_fields),
                        ("factors", raw.factors.is_some()),
                        ("swap", raw.swap.is_some()),
                    ],
                )?;
                Ok(GeneratorDocument::Permutation {
                    map: raw.map.ok_or_else(|| missing("map"))?,
                })
            }
            "affine" => {
                misplaced(
                    "affine",
                    &[
                        ("map", raw.map.is_some()),
                        ("factors", raw.factors.is_some()),
                        ("swap", raw.swap.is_some()),
                    ],
                )?;
                Ok(GeneratorDocument::Affine {
                    signs: raw.signs.ok_or_else(|| missing("signs"))?,
                    perm: raw.perm.ok_or_else(|| missing("perm"))?,
                    translate: raw.translate.ok_or_else(|| missing("translate"))?,
                })
            }
            "product" => {
                misplaced("product", &[("map", raw.map.is_some()), ("signs/perm/translate", affine_fields)])?;
                Ok(GeneratorDocument::Product {
                    factors: raw.factors.ok_or_else(|| missing("factors"))?,
                    swap: raw.swap.unwrap_or(false),
                })
            }
            other => Err(format!("unknown generator kind `{other}`, expected permutation, affine or product")),
        }
    }
}

/// An action as stored on disk. Generators keep their file order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActionDocument {
    pub generators: IndexMap<String, GeneratorDocument>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base: Option<Value>,
}

impl GeneratorDocument {
    pub fn to_automorphism(&self, x: &CubeComplex) -> Result<Automorphism, IoError> {
        match (self, x) {
            (GeneratorDocument::Permutation { map }, CubeComplex::Finite(f)) => {
                let mut table: Vec<usize> = (0..f.len()).collect();
                for (from, to) in map {
                    let lookup = |name: &str| {
                        f.index_of(name)
                            .ok_or_else(|| IoError::Schema(format!("permutation references unknown vertex {name:?}")))
                    };
                    table[lookup(from)?] = lookup(to)?;
                }
                Ok(Automorphism::Permutation(table))
            }
            (GeneratorDocument::Affine { signs, perm, translate }, CubeComplex::Lattice { .. }) => {
                Ok(Automorphism::Affine {
                    signs: signs.clone(),
                    perm: perm.clone(),
                    translate: translate.clone(),
                })
            }
            (GeneratorDocument::Product { factors, swap }, CubeComplex::Product(a, b)) => {
                if factors.len() != 2 {
                    return Err(IoError::Schema("a product generator takes exactly 2 factors".into()));
                }
                let right_space = if *swap { a } else { b };
                Ok(Automorphism::Product {
                    left: Box::new(factors[0].to_automorphism(a)?),
                    right: Box::new(factors[1].to_automorphism(right_space)?),
                    swap: *swap,
                })
            }
            _ => Err(IoError::Schema("generator kind does not match the complex backend".into())),
        }
    }

    pub fn from_automorphism(x: &CubeComplex, g: &Automorphism) -> Self {
        match (g, x) {
            (Automorphism::Permutation(table), CubeComplex::Finite(f)) => GeneratorDocument::Permutation {
                map: table
                    .iter()
                    .enumerate()
                    .filter(|(i, j)| i != *j)
                    .map(|(i, &j)| (f.name(i).to_string(), f.name(j).to_string()))
                    .collect(),
            },
            (Automorphism::Affine { signs, perm, translate }, _) => GeneratorDocument::Affine {
                signs: signs.clone(),
                perm: perm.clone(),
                translate: translate.clone(),
            },
            (Automorphism::Product { left, right, swap }, CubeComplex::Product(a, b)) => {
                let right_space = if *swap { a } else { b };
                GeneratorDocument::Product {
                    factors: vec![Self::from_automorphism(a, left), Self::from_automorphism(right_space, right)],
                    swap: *swap,
                }
            }
            _ => panic!("automorphism does not match the complex"),
        }
    }
}

impl ActionDocument {
    pub fn parse(text: &str) -> Result<Self, IoError> {
        parse_with_path(text, "action document")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("documents serialize")
    }

    pub fn build(&self, x: &CubeComplex) -> Result<GroupAction, IoError> {
        let mut named = Vec::with_capacity(self.generators.len());
        for (name, doc) in &self.generators {
            named.push((name.clone(), doc.to_automorphism(x)?));
        }
        let base = match &self.base {
            Some(v) => vertex_from_json(x, v)?,
            None => x.origin(),
        };
        Ok(GroupAction::new(x, named, base)?)
    }

    pub fn from_generators(x: &CubeComplex, named: &[(String, Automorphism)], base: Option<&Vertex>) -> Self {
        ActionDocument {
            generators: named
                .iter()
                .map(|(n, g)| (n.clone(), GeneratorDocument::from_automorphism(x, g)))
                .collect(),
            base: base.map(|v| vertex_to_json(x, v)),
        }
    }
}

pub fn vertex_to_json(x: &CubeComplex, v: &Vertex) -> Value {
    match (x, v) {
        (CubeComplex::Finite(f), Vertex::Index(i)) => json!(f.name(*i)),
        (CubeComplex::Lattice { .. }, Vertex::Point(p)) => json!(p),
        (CubeComplex::Product(a, b), Vertex::Pair(p, q)) => json!([vertex_to_json(a, p), vertex_to_json(b, q)]),
        _ => panic!("vertex {v} does not belong to the complex"),
    }
}

pub fn vertex_from_json(x: &CubeComplex, value: &Value) -> Result<Vertex, IoError> {
    let bad = || IoError::Schema(format!("{value} is not a vertex of the complex"));
    match x {
        CubeComplex::Finite(f) => {
            let name = value.as_str().ok_or_else(bad)?;
            f.index_of(name).map(Vertex::Index).ok_or_else(bad)
        }
        CubeComplex::Lattice { rank } => {
            let coords: Vec<i64> = value
                .as_array()
                .ok_or_else(bad)?
                .iter()
                .map(|c| c.as_i64().ok_or_else(bad))
                .collect::<Result<_, _>>()?;
            if coords.len() != *rank {
                return Err(bad());
            }
            Ok(Vertex::Point(coords))
        }
        CubeComplex::Product(a, b) => match value.as_array().map(Vec::as_slice) {
            Some([p, q]) => Ok(Vertex::pair(vertex_from_json(a, p)?, vertex_from_json(b, q)?)),
            _ => Err(bad()),
        },
    }
}

/// Parses a vertex given on the command line: JSON, a bare finite vertex
/// name, or comma-separated lattice coordinates.
pub fn vertex_from_arg(x: &CubeComplex, arg: &str) -> Result<Vertex, IoError> {
    if let Ok(v) = serde_json::from_str::<Value>(arg) {
        if let Ok(vertex) = vertex_from_json(x, &v) {
            return Ok(vertex);
        }
    }
    if let CubeComplex::Lattice { .. } = x {
        let coords: Result<Vec<i64>, _> = arg.split(',').map(|s| s.trim().parse::<i64>()).collect();
        if let Ok(c) = coords {
            return vertex_from_json(x, &json!(c));
        }
    }
    vertex_from_json(x, &Value::String(arg.to_string()))
}

pub fn hyperplane_to_json(x: &CubeComplex, h: &Hyperplane) -> Value {
    match (x, h) {
        (CubeComplex::Finite(f), Hyperplane::Edge { tail, head }) => json!([f.name(*tail), f.name(*head)]),
        (CubeComplex::Lattice { .. }, Hyperplane::Wall { axis, wall }) => json!({"axis": axis, "wall": wall}),
        (CubeComplex::Product(a, b), Hyperplane::Factor { factor, inner }) => {
            let space = if *factor == 0 { a } else { b };
            json!({"factor": factor, "hyperplane": hyperplane_to_json(space, inner)})
        }
        _ => panic!("hyperplane {h} does not belong to the complex"),
    }
}

pub fn hyperplane_from_json(x: &CubeComplex, value: &Value) -> Result<Hyperplane, IoError> {
    let bad = |why: &str| IoError::Schema(format!("{value} is not a hyperplane: {why}"));
    match x {
        CubeComplex::Finite(f) => {
            let pair = value.as_array().filter(|a| a.len() == 2).ok_or_else(|| bad("expected [tail, head]"))?;
            let end = |v: &Value| {
                v.as_str()
                    .and_then(|s| f.index_of(s))
                    .ok_or_else(|| bad("unknown vertex"))
            };
            let (a, b) = (end(&pair[0])?, end(&pair[1])?);
            if !f.is_adjacent(a, b) {
                return Err(bad("endpoints are not adjacent"));
            }
            Ok(hyperplane_of(x, &OrientedEdge::new(Vertex::Index(a), Vertex::Index(b))))
        }
        CubeComplex::Lattice { rank } => {
            let obj = value.as_object().ok_or_else(|| bad("expected {axis, wall}"))?;
            if obj.keys().any(|k| k != "axis" && k != "wall") {
                return Err(bad("unknown key"));
            }
            let axis = obj.get("axis").and_then(Value::as_u64).ok_or_else(|| bad("axis"))? as usize;
            let wall = obj.get("wall").and_then(Value::as_i64).ok_or_else(|| bad("wall"))?;
            if axis >= *rank {
                return Err(bad("axis out of range"));
            }
            Ok(Hyperplane::Wall { axis, wall })
        }
        CubeComplex::Product(a, b) => {
            let obj = value.as_object().ok_or_else(|| bad("expected {factor, hyperplane}"))?;
            if obj.keys().any(|k| k != "factor" && k != "hyperplane") {
                return Err(bad("unknown key"));
            }
            let factor = obj.get("factor").and_then(Value::as_u64).ok_or_else(|| bad("factor"))?;
            let inner_value = obj.get("hyperplane").ok_or_else(|| bad("hyperplane"))?;
            let inner = match factor {
                0 => hyperplane_from_json(a, inner_value)?,
                1 => hyperplane_from_json(b, inner_value)?,
                _ => return Err(bad("factor must be 0 or 1")),
            };
            Ok(Hyperplane::Factor {
                factor: factor as u8,
                inner: Box::new(inner),
            })
        }
    }
}

/// A JSON list of hyperplanes.
pub fn hyperplane_list_from_json(x: &CubeComplex, text: &str) -> Result<Vec<Hyperplane>, IoError> {
    let value: Value = serde_json::from_str(text).map_err(|e| IoError::Json(format!("hyperplane list: {e}")))?;
    value
        .as_array()
        .ok_or_else(|| IoError::Schema("expected a JSON array of hyperplanes".into()))?
        .iter()
        .map(|h| hyperplane_from_json(x, h))
        .collect()
}
