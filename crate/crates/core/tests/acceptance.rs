//! Acceptance criteria, one line per criterion. Exits non-zero if any fails.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use cubefix::action::{
    classify, elliptic_certificate, fix_intersection, hyperbolic_certificate, translation_length_estimate,
    verify_certificate, Budget, Certificate, Classification, GroupAction, Word,
};
use cubefix::complex::{lattice_box, Cube, CubeComplex, FiniteComplex, OrientedEdge, Vertex};
use cubefix::hyperplane::{all_hyperplanes, crosses, dual_hyperplanes, hyperplanes_between, side, theta_related};
use cubefix::io::{case_seed, certificate_to_json, cube_to_json, generate_case, outcome_to_json, run_fuzz, Suite};
use cubefix::oracle::{crosses_brute_force, square_closure_classes};
use cubefix::triple::{disjoint_threshold, find_disjoint_triple, helly_common_cube};
use cubefix::{fixed_point_or_witness, Automorphism, FixedPointOutcome, Hyperplane};

const SEED: u64 = 20_240_601;
const CORPUS: usize = 500;
const FIXED_POINT_CASES: usize = 300;
const SAMPLES_PER_CASE: usize = 20;
const SMALL: usize = 40;

struct Case {
    seed: u64,
    x: CubeComplex,
    action: GroupAction,
}

fn corpus(n: usize) -> Vec<Case> {
    (0..n as u64)
        .map(|i| {
            let seed = case_seed(SEED, i);
            let case = generate_case(seed).expect("corpus generation");
            let x = case.complex.build(true).expect("corpus complex");
            let action = case.action.build(&x).expect("corpus action");
            Case { seed, x, action }
        })
        .collect()
}

struct Outcome {
    id: &'static str,
    title: &'static str,
    pass: bool,
    summary: String,
    report: Value,
    elapsed: Duration,
}

fn outcome(id: &'static str, title: &'static str, pass: bool, summary: String, report: Value, start: Instant) -> Outcome {
    Outcome {
        id,
        title,
        pass,
        summary,
        report,
        elapsed: start.elapsed(),
    }
}

fn point(c: &[i64]) -> Vertex {
    Vertex::Point(c.to_vec())
}

fn reflection(c: i64) -> Automorphism {
    Automorphism::Affine {
        signs: vec![-1],
        perm: vec![0],
        translate: vec![c],
    }
}

fn c1_exhaustive_window() -> Outcome {
    let start = Instant::now();
    let plane = CubeComplex::lattice(2);
    let window = CubeComplex::finite(plane.induced(lattice_box(2, 0, 5)).unwrap().complex).unwrap();
    let walls = all_hyperplanes(&window).unwrap();
    let threshold = disjoint_threshold(window.dimension());
    let mut failures = Vec::new();
    let mut subsets = 0;
    let mut triples = Vec::new();
    for skip_a in 0..walls.len() {
        for skip_b in skip_a + 1..walls.len() {
            let family: Vec<Hyperplane> = (0..walls.len())
                .filter(|&i| i != skip_a && i != skip_b)
                .map(|i| walls[i].clone())
                .collect();
            subsets += 1;
            match find_disjoint_triple(&window, &family) {
                Ok(found) => {
                    let t = &found.triple;
                    let disjoint = [(0, 1), (0, 2), (1, 2)]
                        .iter()
                        .all(|&(i, j)| t[i] != t[j] && !crosses_brute_force(&window, &t[i], &t[j]));
                    if !disjoint || !t.iter().all(|h| family.contains(h)) {
                        failures.push(format!("skip ({skip_a},{skip_b}): bad triple {t:?}"));
                    }
                    let idx: Vec<usize> = t.iter().map(|h| walls.iter().position(|w| w == h).unwrap()).collect();
                    triples.push(json!({"skip": [skip_a, skip_b], "triple": idx}));
                }
                Err(e) => failures.push(format!("skip ({skip_a},{skip_b}): {e}")),
            }
        }
    }
    let elapsed = start.elapsed();
    let pass = walls.len() == 10 && threshold == 8 && subsets == 45 && failures.is_empty() && elapsed.as_secs_f64() < 5.0;
    outcome(
        "C1",
        "disjoint triples, all 8-subsets of the [0,5]^2 walls",
        pass,
        format!(
            "{} walls, threshold {threshold}, {}/{subsets} subsets verified, {:.3} s (limit 5 s)",
            walls.len(),
            subsets - failures.len(),
            elapsed.as_secs_f64()
        ),
        json!({"walls": walls.len(), "threshold": threshold, "subsets": subsets, "triples": triples, "failures": failures}),
        start,
    )
}

fn c2_fuzzed_triples(cases: &[Case]) -> Outcome {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut eligible = 0;
    let mut samples = 0;
    for case in cases {
        let x = &case.x;
        let walls = all_hyperplanes(x).unwrap();
        let threshold = disjoint_threshold(x.dimension());
        if walls.len() < threshold {
            continue;
        }
        eligible += 1;
        let mut rng = ChaCha8Rng::seed_from_u64(case.seed ^ 0xC2);
        for _ in 0..SAMPLES_PER_CASE {
            let size = rng.gen_range(threshold..=walls.len());
            let family: Vec<Hyperplane> = walls.choose_multiple(&mut rng, size).cloned().collect();
            samples += 1;
            match find_disjoint_triple(x, &family) {
                Ok(found) => {
                    let t = &found.triple;
                    let ok = [(0, 1), (0, 2), (1, 2)]
                        .iter()
                        .all(|&(i, j)| t[i] != t[j] && !crosses_brute_force(x, &t[i], &t[j]))
                        && t.iter().all(|h| family.contains(h));
                    if !ok {
                        failures.push(format!("seed {}: triple {t:?} not pairwise disjoint", case.seed));
                    }
                }
                Err(e) => failures.push(format!("seed {} |S|={size}: {e}", case.seed)),
            }
        }
    }
    let elapsed = start.elapsed();
    let pass = failures.is_empty() && eligible > 0 && samples >= eligible * SAMPLES_PER_CASE && elapsed.as_secs_f64() < 60.0;
    outcome(
        "C2",
        "disjoint triples on the fuzz corpus",
        pass,
        format!(
            "{} complexes, {eligible} at or above threshold, {samples} samples ({SAMPLES_PER_CASE} per case), {} failures, {:.2} s (limit 60 s)",
            cases.len(),
            failures.len(),
            elapsed.as_secs_f64()
        ),
        json!({"complexes": cases.len(), "eligible": eligible, "samples": samples, "failures": failures}),
        start,
    )
}

fn c3_distance_duality(cases: &[Case]) -> Outcome {
    let start = Instant::now();
    let mut failures = Vec::new();
    let (mut complexes, mut pairs) = (0, 0);
    for case in cases.iter().filter(|c| c.x.as_finite().unwrap().len() <= SMALL) {
        let x = &case.x;
        complexes += 1;
        let walls = all_hyperplanes(x).unwrap();
        let all = x.all_vertices().unwrap();
        for a in &all {
            for b in &all {
                pairs += 1;
                let d = x.distance(a, b);
                let between = hyperplanes_between(x, a, b).len();
                let by_side = walls.iter().filter(|h| side(x, h, a) != side(x, h, b)).count();
                if d != between || d != by_side {
                    failures.push(format!("seed {}: {a} {b}: {d} {between} {by_side}", case.seed));
                }
            }
        }
    }
    outcome(
        "C3",
        "distance equals the number of separating hyperplanes",
        failures.is_empty() && complexes > 0,
        format!("{complexes} complexes with at most {SMALL} vertices, {pairs} ordered pairs, {} exceptions (tolerance 0)", failures.len()),
        json!({"complexes": complexes, "pairs": pairs, "failures": failures}),
        start,
    )
}

fn c4_theta_oracle(cases: &[Case]) -> Outcome {
    let start = Instant::now();
    let mut failures = Vec::new();
    let (mut complexes, mut pairs) = (0, 0);
    for case in cases.iter().filter(|c| c.x.as_finite().unwrap().len() <= SMALL) {
        let x = &case.x;
        let f = x.as_finite().unwrap();
        complexes += 1;
        let closure = square_closure_classes(f);
        let edges: Vec<OrientedEdge> = f
            .edges()
            .iter()
            .map(|&(a, b)| OrientedEdge::new(Vertex::Index(a), Vertex::Index(b)))
            .collect();
        for i in 0..edges.len() {
            for j in 0..edges.len() {
                pairs += 1;
                if theta_related(x, &edges[i], &edges[j]) != (closure[i] == closure[j]) {
                    failures.push(format!("seed {}: edges {i} {j}", case.seed));
                }
            }
        }
    }
    outcome(
        "C4",
        "distance criterion agrees with the square closure",
        failures.is_empty() && complexes > 0,
        format!("{complexes} complexes, {pairs} edge pairs, {} exceptions (tolerance 0)", failures.len()),
        json!({"complexes": complexes, "pairs": pairs, "failures": failures}),
        start,
    )
}

fn crossing_families(x: &CubeComplex, walls: &[Hyperplane], max: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut stack: Vec<Vec<usize>> = (0..walls.len()).rev().map(|i| vec![i]).collect();
    while let Some(family) = stack.pop() {
        if family.len() < max {
            let last = *family.last().unwrap();
            for j in (last + 1..walls.len()).rev() {
                if family.iter().all(|&i| crosses(x, &walls[i], &walls[j])) {
                    let mut next = family.clone();
                    next.push(j);
                    stack.push(next);
                }
            }
        }
        out.push(family);
    }
    out
}

fn c5_helly(cases: &[Case]) -> Outcome {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut families = 0;
    for case in cases {
        let x = &case.x;
        let walls = all_hyperplanes(x).unwrap();
        for family in crossing_families(x, &walls, x.dimension()) {
            families += 1;
            let members: Vec<Hyperplane> = family.iter().map(|&i| walls[i].clone()).collect();
            match helly_common_cube(x, &members) {
                Ok(cube) => {
                    let mut want = members.clone();
                    want.sort();
                    if dual_hyperplanes(x, &cube) != want {
                        failures.push(format!("seed {}: wrong cube for {family:?}", case.seed));
                    }
                }
                Err(e) => failures.push(format!("seed {}: {family:?}: {e}", case.seed)),
            }
        }
    }
    outcome(
        "C5",
        "pairwise crossing families meet in a cube",
        failures.is_empty() && families > 0,
        format!("{} complexes, {families} families of size at most d, {} exceptions (tolerance 0)", cases.len(), failures.len()),
        json!({"complexes": cases.len(), "families": families, "failures": failures}),
        start,
    )
}

fn c6_bounded_actions(cases: &[Case]) -> Outcome {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut undecided = 0;
    let mut nontrivial = 0;
    let mut dims = [0usize; 5];
    for case in cases.iter().take(FIXED_POINT_CASES) {
        let x = &case.x;
        if !case.action.generators().is_empty() {
            nontrivial += 1;
        }
        match fixed_point_or_witness(x, &case.action, &Budget::default()) {
            Ok(FixedPointOutcome::FixedPoint { cube }) => {
                dims[cube.dim().min(4)] += 1;
                if let Some(g) = case.action.generators().iter().find(|g| g.map.apply_cube(&cube) != cube) {
                    failures.push(format!("seed {}: {} moves {}", case.seed, g.name, cube_to_json(x, &cube)));
                }
            }
            Ok(other) => {
                if matches!(other, FixedPointOutcome::Undecided { .. }) {
                    undecided += 1;
                }
                failures.push(format!("seed {}: {}", case.seed, outcome_to_json(x, &other)));
            }
            Err(e) => failures.push(format!("seed {}: {e}", case.seed)),
        }
    }
    let elapsed = start.elapsed();
    let n = cases.len().min(FIXED_POINT_CASES);
    let pass = failures.is_empty() && n == FIXED_POINT_CASES && elapsed.as_secs_f64() < 60.0;
    outcome(
        "C6",
        "full automorphism groups of finite complexes fix a cube",
        pass,
        format!(
            "{n} cases ({nontrivial} with nontrivial groups), fixed cube dimensions {dims:?}, {undecided} undecided, {} failures, {:.2} s (limit 60 s)",
            failures.len(),
            elapsed.as_secs_f64()
        ),
        json!({"cases": n, "nontrivial": nontrivial, "cube_dimensions": dims, "undecided": undecided, "failures": failures}),
        start,
    )
}

fn c7_dihedral_witness() -> Outcome {
    let start = Instant::now();
    let z = CubeComplex::lattice(1);
    let budget = Budget::default();
    let v = point(&[0]);
    let s = reflection(0);
    let t = reflection(2);
    let mut notes = Vec::new();
    let s_class = classify(&z, &s, &v, &budget);
    let t_class = classify(&z, &t, &v, &budget);
    let fixes = |c: &Classification, at: i64| {
        matches!(c, Classification::Certified(Certificate::Elliptic { cube }) if cube.contains(&point(&[at])))
    };
    let generators_elliptic = fixes(&s_class, 0) && fixes(&t_class, 1);
    notes.push(format!("s elliptic at 0: {}, t elliptic at 1: {}", fixes(&s_class, 0), fixes(&t_class, 1)));
    let action = GroupAction::new(&z, vec![("s".into(), s), ("t".into(), t)], v.clone()).unwrap();
    let result = fixed_point_or_witness(&z, &action, &budget);
    let (witness_ok, witness_json, estimate) = match &result {
        Ok(FixedPointOutcome::HyperbolicWitness { word, certificate, .. }) => {
            let g = action.evaluate(&z, word).unwrap();
            let fresh = classify(&z, &g, &v, &budget);
            let recertified = fresh.is_hyperbolic()
                && verify_certificate(&z, &g, certificate)
                && verify_certificate(&z, &g, fresh.certificate().unwrap());
            let ts = action.evaluate(&z, &Word::parse("t,s")).unwrap();
            let e_ts = translation_length_estimate(&z, &ts, &v, 8);
            let e_witness = translation_length_estimate(&z, &g, &v, 8);
            notes.push(format!("witness {word}, estimate(ts, 8) = {}, estimate(witness, 8) = {}", e_ts.value(), e_witness.value()));
            (
                recertified,
                json!({"word": word.letters(), "certificate": certificate_to_json(&z, certificate)}),
                (e_ts.distance, e_ts.n, e_witness.distance, e_witness.n),
            )
        }
        other => {
            notes.push(format!("unexpected outcome {other:?}"));
            (false, Value::Null, (0, 0, 0, 0))
        }
    };
    let exact = estimate.0 == 16 && estimate.1 == 8;
    let elapsed = start.elapsed();
    let pass = generators_elliptic && witness_ok && exact && elapsed.as_secs_f64() < 5.0;
    outcome(
        "C7",
        "infinite dihedral group yields a hyperbolic witness",
        pass,
        format!("{}; re-certified: {witness_ok}; {:.3} s (limit 5 s)", notes.join("; "), elapsed.as_secs_f64()),
        json!({"generators_elliptic": generators_elliptic, "witness": witness_json, "estimate_ts": [estimate.0, estimate.1], "estimate_witness": [estimate.2, estimate.3]}),
        start,
    )
}

fn c8_certificates(cases: &[Case]) -> Outcome {
    let start = Instant::now();
    let budget = Budget::default();
    let mut failures = Vec::new();

    let z = CubeComplex::lattice(1);
    let shift = Automorphism::translation(vec![2]);
    match classify(&z, &shift, &point(&[0]), &budget) {
        Classification::Certified(Certificate::Hyperbolic { triple, .. })
            if triple == [Hyperplane::wall(0, -2), Hyperplane::wall(0, 0), Hyperplane::wall(0, 2)] => {}
        other => failures.push(format!("translation: {other:?}")),
    }
    let square = CubeComplex::finite(
        FiniteComplex::new(&["a", "b", "c", "d"], &[("a", "b"), ("b", "c"), ("c", "d"), ("d", "a")]).unwrap(),
    )
    .unwrap();
    let rotation = Automorphism::Permutation(vec![1, 2, 3, 0]);
    let whole = Cube::new((0..4).map(Vertex::Index).collect());
    if classify(&square, &rotation, &Vertex::Index(0), &budget) != Classification::Certified(Certificate::Elliptic { cube: whole }) {
        failures.push("rotation is not certified elliptic on the square".into());
    }
    let plane = CubeComplex::lattice(2);
    let glide = Automorphism::Affine {
        signs: vec![1, -1],
        perm: vec![0, 1],
        translate: vec![1, 0],
    };
    let origin = point(&[0, 0]);
    match classify(&plane, &glide, &origin, &budget) {
        Classification::Certified(Certificate::Hyperbolic { hyperplane, .. }) if hyperplane == Hyperplane::wall(0, 0) => {}
        other => failures.push(format!("glide: {other:?}")),
    }
    let e = translation_length_estimate(&plane, &glide, &origin, 6);
    if (e.distance, e.n) != (6, 6) {
        failures.push(format!("glide estimate {}/{}", e.distance, e.n));
    }

    let mut elements = 0;
    let mut conflicts = 0;
    for case in cases {
        let x = &case.x;
        let gens = case.action.generators();
        let mut rng = ChaCha8Rng::seed_from_u64(case.seed ^ 0xC8);
        let mut words: Vec<Vec<usize>> = (0..gens.len()).map(|i| vec![i]).collect();
        if !gens.is_empty() {
            for _ in 0..3 {
                let len = rng.gen_range(2..=4);
                words.push((0..len).map(|_| rng.gen_range(0..gens.len())).collect());
            }
        }
        for w in &words {
            let g = case.action.evaluate_letters(x, w);
            elements += 1;
            let v = case.action.base();
            let both = hyperbolic_certificate(x, &g, v, budget.power).is_some()
                && elliptic_certificate(x, &g, v, budget.radius).is_some();
            if both {
                conflicts += 1;
                failures.push(format!("seed {}: word {:?} has both certificates", case.seed, w));
            }
        }
    }
    outcome(
        "C8",
        "classification certificates and mutual exclusion",
        failures.is_empty(),
        format!(
            "translation hyperbolic, rotation elliptic, glide hyperbolic with estimate {}/{} at n=6; {elements} corpus elements, {conflicts} conflicts (tolerance 0)",
            e.distance, e.n
        ),
        json!({"elements": elements, "conflicts": conflicts, "failures": failures}),
        start,
    )
}

fn c9_filtering(cases: &[Case]) -> Outcome {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut checks = 0;
    let mut strict = 0;
    for case in cases {
        let x = &case.x;
        let maps: Vec<Automorphism> = case.action.generators().iter().map(|g| g.map.clone()).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(case.seed ^ 0xC9);
        for _ in 0..3 {
            let s: Vec<Automorphism> = maps.iter().filter(|_| rng.gen_bool(0.5)).cloned().collect();
            let t: Vec<Automorphism> = maps.iter().filter(|_| rng.gen_bool(0.5)).cloned().collect();
            checks += 1;
            match fix_intersection(x, &s, &t) {
                Ok(cmp) => {
                    let inter_v: BTreeSet<&Vertex> = cmp.intersection.vertices.iter().collect();
                    let inter_c: BTreeSet<&Cube> = cmp.intersection.cubes.iter().collect();
                    let contained = cmp.union.vertices.iter().all(|v| inter_v.contains(v))
                        && cmp.union.cubes.iter().all(|c| inter_c.contains(c));
                    if !contained {
                        failures.push(format!("seed {}: union not contained", case.seed));
                    }
                    if !cmp.equal {
                        strict += 1;
                    }
                }
                Err(e) => failures.push(format!("seed {}: {e}", case.seed)),
            }
        }
    }
    outcome(
        "C9",
        "fixed sets of unions lie in the intersection",
        failures.is_empty() && checks > 0,
        format!("{checks} subset pairs over {} cases, {strict} strict containments, {} violations (tolerance 0)", cases.len(), failures.len()),
        json!({"checks": checks, "strict": strict, "failures": failures}),
        start,
    )
}

fn run_all() -> Vec<Outcome> {
    let start = Instant::now();
    let cases = corpus(CORPUS);
    let generation = start.elapsed();
    let mut out = vec![c1_exhaustive_window()];
    let mut c2 = c2_fuzzed_triples(&cases);
    c2.elapsed += generation;
    c2.summary += &format!(" plus {:.2} s corpus generation", generation.as_secs_f64());
    out.push(c2);
    out.push(c3_distance_duality(&cases));
    out.push(c4_theta_oracle(&cases));
    out.push(c5_helly(&cases));
    out.push(c6_bounded_actions(&cases));
    out.push(c7_dihedral_witness());
    out.push(c8_certificates(&cases));
    out.push(c9_filtering(&cases));
    out
}

fn report(outcomes: &[Outcome]) -> String {
    let map: serde_json::Map<String, Value> = outcomes
        .iter()
        .map(|o| (o.id.to_string(), json!({"pass": o.pass, "report": o.report})))
        .collect();
    serde_json::to_string(&map).unwrap()
}

fn main() -> ExitCode {
    let first = run_all();
    for o in &first {
        println!(
            "{} [{}] {}: {} ({:.2} s)",
            o.id,
            if o.pass { "PASS" } else { "FAIL" },
            o.title,
            o.summary,
            o.elapsed.as_secs_f64()
        );
    }
    let start = Instant::now();
    let second = run_all();
    let (a, b) = (report(&first), report(&second));
    let fuzz_a = run_fuzz(60, SEED, &Suite::ALL).map(|r| r.to_json());
    let fuzz_b = run_fuzz(60, SEED, &Suite::ALL).map(|r| r.to_json());
    let fuzz_same = matches!((&fuzz_a, &fuzz_b), (Ok(x), Ok(y)) if x == y);
    let same = a == b && fuzz_same;
    println!(
        "C10 [{}] reruns are byte-identical: criteria 1-9 report {} bytes, identical {}; fuzz report identical {fuzz_same} ({:.2} s)",
        if same { "PASS" } else { "FAIL" },
        a.len(),
        a == b,
        start.elapsed().as_secs_f64()
    );
    let passed = first.iter().filter(|o| o.pass).count() + same as usize;
    println!("acceptance: {passed}/10 criteria passed");
    if passed == 10 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
