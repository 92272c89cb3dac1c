//! Randomized invariant suites over the generated corpus.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::generate::{case_seed, generate_case, Family};
use super::IoError;
use crate::action::Budget;
use crate::complex::{CubeComplex, OrientedEdge, Vertex};
use crate::fixed_point::{fixed_point_or_witness, FixedPointOutcome};
use crate::hyperplane::{all_hyperplanes, crosses, hyperplanes_between, side, theta_related, Hyperplane};
use crate::oracle::{crosses_brute_force, square_closure_classes};
use crate::triple::{disjoint_threshold, find_disjoint_triple, helly_common_cube};

/// Subsets sampled per case by the triple suite.
pub const TRIPLE_SAMPLES: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    Helly,
    Prop1,
    TheoremA,
    ThetaOracle,
    DistanceCount,
}

impl Suite {
    pub const ALL: [Suite; 5] = [
        Suite::Helly,
        Suite::Prop1,
        Suite::TheoremA,
        Suite::ThetaOracle,
        Suite::DistanceCount,
    ];
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suite::Helly => "helly",
            Suite::Prop1 => "prop1",
            Suite::TheoremA => "theorem_a",
            Suite::ThetaOracle => "theta_oracle",
            Suite::DistanceCount => "distance_count",
        })
    }
}

impl FromStr for Suite {
    type Err = IoError;

    fn from_str(s: &str) -> Result<Self, IoError> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.to_string() == s)
            .ok_or_else(|| IoError::InvalidArguments(format!("unknown suite {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteOutcome {
    pub suite: Suite,
    pub passed: usize,
    pub failed: usize,
    /// Individual assertions checked across all cases.
    pub checks: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CaseSummary {
    pub index: usize,
    pub seed: u64,
    pub family: Option<Family>,
    pub vertices: usize,
    pub dimension: usize,
    pub hyperplanes: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub index: usize,
    pub seed: u64,
    pub suite: String,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FuzzReport {
    pub n_cases: usize,
    pub seed0: u64,
    pub suites: Vec<SuiteOutcome>,
    pub failures: Vec<Failure>,
    pub cases: Vec<CaseSummary>,
}

impl FuzzReport {
    pub fn is_clean(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}

type Check = Result<usize, String>;

fn helly_suite(x: &CubeComplex, hyperplanes: &[Hyperplane]) -> Check {
    let d = x.dimension();
    let mut checks = 0;
    // extend pairwise crossing families in index order
    let mut stack: Vec<Vec<usize>> = (0..hyperplanes.len()).map(|i| vec![i]).collect();
    while let Some(family) = stack.pop() {
        let members: Vec<Hyperplane> = family.iter().map(|&i| hyperplanes[i].clone()).collect();
        helly_common_cube(x, &members).map_err(|e| format!("family {members:?}: {e}"))?;
        checks += 1;
        if family.len() < d {
            let last = *family.last().expect("non-empty");
            for j in last + 1..hyperplanes.len() {
                if family.iter().all(|&i| crosses(x, &hyperplanes[i], &hyperplanes[j])) {
                    let mut next = family.clone();
                    next.push(j);
                    stack.push(next);
                }
            }
        }
    }
    Ok(checks)
}

fn prop1_suite(x: &CubeComplex, hyperplanes: &[Hyperplane], rng: &mut ChaCha8Rng) -> Check {
    let threshold = disjoint_threshold(x.dimension());
    if hyperplanes.len() < threshold {
        return Ok(0);
    }
    for _ in 0..TRIPLE_SAMPLES {
        let size = rng.gen_range(threshold..=hyperplanes.len());
        let mut family: Vec<Hyperplane> = hyperplanes.choose_multiple(rng, size).cloned().collect();
        family.shuffle(rng);
        let found = find_disjoint_triple(x, &family).map_err(|e| format!("|S| = {size}: {e}"))?;
        let t = &found.triple;
        for (i, j) in [(0, 1), (0, 2), (1, 2)] {
            if t[i] == t[j] || crosses_brute_force(x, &t[i], &t[j]) {
                return Err(format!("triple {t:?} is not pairwise disjoint"));
            }
        }
        if t.iter().any(|h| !family.contains(h)) {
            return Err(format!("triple {t:?} leaves the family"));
        }
    }
    Ok(TRIPLE_SAMPLES)
}

fn theorem_a_suite(x: &CubeComplex, case: &super::FuzzCase) -> Check {
    let action = case.action.build(x).map_err(|e| e.to_string())?;
    let outcome = fixed_point_or_witness(x, &action, &Budget::default()).map_err(|e| e.to_string())?;
    match outcome {
        FixedPointOutcome::FixedPoint { cube } => {
            if let Some(g) = action.generators().iter().find(|g| g.map.apply_cube(&cube) != cube) {
                return Err(format!("generator {} moves the returned cube", g.name));
            }
            Ok(1)
        }
        other => Err(format!("expected a fixed point, got {}", other.kind())),
    }
}

fn theta_oracle_suite(x: &CubeComplex) -> Check {
    let f = x.as_finite().expect("finite corpus");
    let closure = square_closure_classes(f);
    let edges: Vec<OrientedEdge> = f
        .edges()
        .iter()
        .map(|&(a, b)| OrientedEdge::new(Vertex::Index(a), Vertex::Index(b)))
        .collect();
    let mut checks = 0;
    for i in 0..edges.len() {
        for j in 0..edges.len() {
            let by_distance = theta_related(x, &edges[i], &edges[j]);
            if by_distance != (closure[i] == closure[j]) {
                return Err(format!(
                    "edges {} and {} disagree: distance criterion says {by_distance}",
                    edges[i], edges[j]
                ));
            }
            checks += 1;
        }
    }
    Ok(checks)
}

fn distance_count_suite(x: &CubeComplex, hyperplanes: &[Hyperplane]) -> Check {
    let all = x.all_vertices().expect("finite corpus");
    let mut checks = 0;
    for (i, a) in all.iter().enumerate() {
        for b in &all[i..] {
            let d = x.distance(a, b);
            let between = hyperplanes_between(x, a, b).len();
            let by_sides = hyperplanes.iter().filter(|h| side(x, h, a) != side(x, h, b)).count();
            if d != between || d != by_sides {
                return Err(format!(
                    "d({}, {}) = {d} but {between} hyperplanes between and {by_sides} by sides",
                    x.label(a),
                    x.label(b)
                ));
            }
            checks += 1;
        }
    }
    Ok(checks)
}

struct CaseResult {
    summary: CaseSummary,
    results: Vec<(Suite, Check)>,
    setup_error: Option<String>,
}

fn run_case(index: usize, seed0: u64, suites: &[Suite]) -> CaseResult {
    let seed = case_seed(seed0, index as u64);
    let mut summary = CaseSummary {
        index,
        seed,
        family: None,
        vertices: 0,
        dimension: 0,
        hyperplanes: 0,
    };
    let prepared = generate_case(seed).and_then(|case| Ok((case.complex.build(true)?, case)));
    let (x, case) = match prepared {
        Ok(p) => p,
        Err(e) => {
            return CaseResult {
                summary,
                results: Vec::new(),
                setup_error: Some(e.to_string()),
            }
        }
    };
    let hyperplanes = all_hyperplanes(&x).expect("finite corpus");
    summary.family = Some(case.family);
    summary.vertices = x.as_finite().map_or(0, |f| f.len());
    summary.dimension = x.dimension();
    summary.hyperplanes = hyperplanes.len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let results = suites
        .iter()
        .map(|&suite| {
            let check = match suite {
                Suite::Helly => helly_suite(&x, &hyperplanes),
                Suite::Prop1 => prop1_suite(&x, &hyperplanes, &mut rng),
                Suite::TheoremA => theorem_a_suite(&x, &case),
                Suite::ThetaOracle => theta_oracle_suite(&x),
                Suite::DistanceCount => distance_count_suite(&x, &hyperplanes),
            };
            (suite, check)
        })
        .collect();
    CaseResult {
        summary,
        results,
        setup_error: None,
    }
}

/// Generates `n_cases` cases from `seed0` and runs the selected suites on
/// each. Cases run in parallel; the report is merged in case order.
pub fn run_fuzz(n_cases: usize, seed0: u64, suites: &[Suite]) -> Result<FuzzReport, IoError> {
    if suites.is_empty() {
        return Err(IoError::InvalidArguments("select at least one suite".into()));
    }
    if n_cases == 0 {
        return Err(IoError::InvalidArguments("n_cases must be at least 1".into()));
    }
    let mut selected = suites.to_vec();
    selected.sort();
    selected.dedup();
    let results: Vec<CaseResult> = (0..n_cases)
        .into_par_iter()
        .map(|i| run_case(i, seed0, &selected))
        .collect();
    let mut outcomes: Vec<SuiteOutcome> = selected
        .iter()
        .map(|&suite| SuiteOutcome {
            suite,
            passed: 0,
            failed: 0,
            checks: 0,
        })
        .collect();
    let mut failures = Vec::new();
    let mut cases = Vec::with_capacity(n_cases);
    for r in results {
        if let Some(message) = r.setup_error {
            failures.push(Failure {
                index: r.summary.index,
                seed: r.summary.seed,
                suite: "generate".into(),
                message,
            });
        }
        for (k, (suite, check)) in r.results.into_iter().enumerate() {
            match check {
                Ok(n) => {
                    outcomes[k].passed += 1;
                    outcomes[k].checks += n;
                }
                Err(message) => {
                    outcomes[k].failed += 1;
                    failures.push(Failure {
                        index: r.summary.index,
                        seed: r.summary.seed,
                        suite: suite.to_string(),
                        message,
                    });
                }
            }
        }
        cases.push(r.summary);
    }
    Ok(FuzzReport {
        n_cases,
        seed0,
        suites: outcomes,
        failures,
        cases,
    })
}
