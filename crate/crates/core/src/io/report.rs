//! JSON renderings of results.

use serde_json::{json, Value};

use super::schema::{hyperplane_to_json, vertex_to_json};
use crate::action::{Certificate, Classification, Word};
use crate::complex::{Cube, CubeComplex};
use crate::fixed_point::{CandidateReport, FixedPointOutcome};
use crate::hyperplane::Hyperplane;
use crate::triple::DisjointTriple;

pub fn word_to_json(w: &Word) -> Value {
    json!(w.letters())
}

pub fn cube_to_json(x: &CubeComplex, c: &Cube) -> Value {
    json!({
        "dim": c.dim(),
        "vertices": c.vertices().iter().map(|v| vertex_to_json(x, v)).collect::<Vec<_>>(),
    })
}

fn hyperplanes_to_json(x: &CubeComplex, hs: &[Hyperplane]) -> Value {
    Value::Array(hs.iter().map(|h| hyperplane_to_json(x, h)).collect())
}

pub fn certificate_to_json(x: &CubeComplex, c: &Certificate) -> Value {
    match c {
        Certificate::Elliptic { cube } => json!({"kind": "elliptic", "cube": cube_to_json(x, cube)}),
        Certificate::Hyperbolic {
            hyperplane,
            power,
            triple,
            sides,
        } => json!({
            "kind": "hyperbolic",
            "hyperplane": hyperplane_to_json(x, hyperplane),
            "power": power,
            "triple": hyperplanes_to_json(x, triple),
            "sides": [sides[0].to_string(), sides[1].to_string()],
        }),
    }
}

pub fn classification_to_json(x: &CubeComplex, c: &Classification) -> Value {
    match c {
        Classification::Certified(cert) => certificate_to_json(x, cert),
        Classification::Undecided { power, radius } => {
            json!({"kind": "undecided", "power": power, "radius": radius})
        }
    }
}

pub fn triple_to_json(x: &CubeComplex, t: &DisjointTriple) -> Value {
    json!({
        "triple": hyperplanes_to_json(x, &t.triple),
        "separating": t.separating,
    })
}

fn candidates_to_json(x: &CubeComplex, cs: &[CandidateReport]) -> Value {
    Value::Array(
        cs.iter()
            .map(|c| {
                json!({
                    "label": c.label,
                    "word": word_to_json(&c.word),
                    "classification": classification_to_json(x, &c.classification),
                })
            })
            .collect(),
    )
}

pub fn outcome_to_json(x: &CubeComplex, outcome: &FixedPointOutcome) -> Value {
    match outcome {
        FixedPointOutcome::FixedPoint { cube } => json!({"outcome": outcome.kind(), "cube": cube_to_json(x, cube)}),
        FixedPointOutcome::HyperbolicWitness {
            word,
            certificate,
            candidates,
        } => json!({
            "outcome": outcome.kind(),
            "word": word_to_json(word),
            "certificate": certificate_to_json(x, certificate),
            "candidates": candidates_to_json(x, candidates),
        }),
        FixedPointOutcome::Undecided { report } => json!({
            "outcome": outcome.kind(),
            "reason": report.reason,
            "far_word": report.far_word.as_ref().map(word_to_json),
            "distance": report.distance,
            "buckets": report
                .bucket_sizes
                .iter()
                .map(|(h, n)| json!({"hyperplane": hyperplane_to_json(x, h), "size": n}))
                .collect::<Vec<_>>(),
            "triple": report.triple.as_ref().map(|t| hyperplanes_to_json(x, t)),
            "candidates": candidates_to_json(x, &report.candidates),
        }),
    }
}
