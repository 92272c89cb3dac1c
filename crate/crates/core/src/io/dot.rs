//! Graphviz export.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write;

use crate::complex::{Cube, CubeComplex, OrientedEdge, Vertex};
use crate::hyperplane::{all_hyperplanes, hyperplane_of, Hyperplane};

const PALETTE: [&str; 12] = [
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22",
    "#17becf", "#393b79", "#637939",
];

#[derive(Clone, Debug, Default)]
pub struct Overlays {
    /// Colour edges by hyperplane.
    pub hyperplanes: bool,
    pub cube: Option<Cube>,
    pub orbit: Option<Vec<Vertex>>,
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// DOT text for a finite complex. Nodes and edges follow the vertex and
/// edge order of the complex, so equal inputs give equal text.
pub fn export_dot(x: &CubeComplex, overlays: &Overlays) -> String {
    let f = x.as_finite().expect("DOT export needs a finite complex");
    let classes: BTreeMap<Hyperplane, usize> = if overlays.hyperplanes {
        all_hyperplanes(x)
            .unwrap_or_default()
            .into_iter()
            .enumerate()
            .map(|(i, h)| (h, i))
            .collect()
    } else {
        BTreeMap::new()
    };
    let in_cube: BTreeSet<&Vertex> = overlays.cube.iter().flat_map(|c| c.vertices()).collect();
    let in_orbit: BTreeSet<&Vertex> = overlays.orbit.iter().flatten().collect();

    let mut out = String::from("graph complex {\n  node [shape=circle];\n");
    for i in 0..f.len() {
        let v = Vertex::Index(i);
        let mut attrs = Vec::new();
        if in_cube.contains(&v) {
            attrs.push("style=filled".to_string());
            attrs.push("fillcolor=\"#ffd54f\"".to_string());
        }
        if in_orbit.contains(&v) {
            attrs.push("peripheries=2".to_string());
        }
        let name = quote(f.name(i));
        if attrs.is_empty() {
            writeln!(out, "  {name};").expect("write to string");
        } else {
            writeln!(out, "  {name} [{}];", attrs.join(", ")).expect("write to string");
        }
    }
    for &(a, b) in f.edges() {
        let (na, nb) = (quote(f.name(a)), quote(f.name(b)));
        if overlays.hyperplanes {
            let h = hyperplane_of(x, &OrientedEdge::new(Vertex::Index(a), Vertex::Index(b)));
            let class = classes[&h];
            writeln!(
                out,
                "  {na} -- {nb} [color=\"{}\", label=\"h{class}\"];",
                PALETTE[class % PALETTE.len()]
            )
            .expect("write to string");
        } else {
            writeln!(out, "  {na} -- {nb};").expect("write to string");
        }
    }
    out.push_str("}\n");
    out
}
