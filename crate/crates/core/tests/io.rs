use cubefix::complex::{CubeComplex, FiniteComplex};
use cubefix::io::{
    automorphism_search, export_dot, generate_case, generate_complex, hyperplane_from_json, hyperplane_to_json,
    run_fuzz, ActionDocument, ComplexDocument, Family, IoError, Overlays, Suite,
};
use cubefix::oracle::{automorphism_count_brute_force, permutation_group_closure};
use cubefix::{Automorphism, Hyperplane};
use serde_json::json;

fn finite(names: &[&str], edges: &[(&str, &str)]) -> CubeComplex {
    CubeComplex::finite(FiniteComplex::new(names, edges).unwrap()).unwrap()
}

fn square() -> CubeComplex {
    finite(&["a", "b", "c", "d"], &[("a", "b"), ("b", "c"), ("c", "d"), ("d", "a")])
}

fn group_order(x: &CubeComplex) -> usize {
    let gens: Vec<Vec<usize>> = automorphism_search(x)
        .unwrap()
        .into_iter()
        .map(|(_, g)| match g {
            Automorphism::Permutation(p) => p,
            other => panic!("{other:?}"),
        })
        .collect();
    permutation_group_closure(x.as_finite().unwrap().len(), &gens).len()
}

#[test]
fn complex_documents_round_trip() {
    let docs = [
        r#"{"type":"finite","vertices":["a","b","c"],"edges":[["a","b"],["b","c"]],"name":"path"}"#,
        r#"{"type":"lattice","rank":2,"dimension":2}"#,
        r#"{"type":"product","factors":[{"type":"lattice","rank":1},{"type":"finite","vertices":["u","v"],"edges":[["u","v"]]}]}"#,
    ];
    for text in docs {
        let doc = ComplexDocument::parse(text).unwrap();
        let again = ComplexDocument::parse(&doc.to_json()).unwrap();
        assert_eq!(doc, again);
        let x = doc.build(true).unwrap();
        let rebuilt = ComplexDocument::from_complex(&x).build(true).unwrap();
        assert!(x.same_structure(&rebuilt));
    }
}

#[test]
fn strict_schemas() {
    let unknown = ComplexDocument::parse(r#"{"type":"lattice","rank":2,"colour":"red"}"#).unwrap_err();
    assert!(matches!(unknown, IoError::Json(_)));
    assert!(unknown.to_string().contains("line 1 column"), "{unknown}");
    let dangling = ComplexDocument::parse(r#"{"type":"finite","vertices":["a","b"],"edges":[["a","b"],["b","z"]]}"#)
        .unwrap()
        .build(true)
        .unwrap_err();
    assert!(dangling.to_string().contains("edges[1]"), "{dangling}");
    let wrong_dimension = ComplexDocument::parse(r#"{"type":"lattice","rank":2,"dimension":3}"#).unwrap();
    assert!(matches!(wrong_dimension.build(true), Err(IoError::Schema(_))));
    let hexagon = ComplexDocument::parse(
        r#"{"type":"finite","vertices":["0","1","2","3","4","5"],"edges":[["0","1"],["1","2"],["2","3"],["3","4"],["4","5"],["5","0"]]}"#,
    )
    .unwrap();
    assert!(hexagon.build(true).is_err());
    assert!(hexagon.build(false).is_ok());
    let bad_action =
        ActionDocument::parse(r#"{"generators":{"r":{"kind":"permutation","map":{},"extra":1}}}"#).unwrap_err();
    assert!(bad_action.to_string().contains("line 1 column"), "{bad_action}");
    let misplaced = ComplexDocument::parse(
        r#"{"type":"product","factors":[{"type":"lattice","rank":1},{"type":"lattice","rank":1,"edges":[]}]}"#,
    )
    .unwrap_err();
    assert!(misplaced.to_string().contains("$.factors[1]"), "{misplaced}");
}

#[test]
fn action_documents() {
    let x = square();
    let doc = ActionDocument::parse(
        r#"{"generators":{"r":{"kind":"permutation","map":{"a":"b","b":"c","c":"d","d":"a"}}},"base":"a"}"#,
    )
    .unwrap();
    let action = doc.build(&x).unwrap();
    assert_eq!(action.generators().len(), 2);
    let named: Vec<(String, Automorphism)> =
        action.generators().iter().map(|g| (g.name.clone(), g.map.clone())).collect();
    let again = ActionDocument::from_generators(&x, &named[..1], Some(action.base()));
    assert_eq!(again, doc);
    let broken = ActionDocument::parse(r#"{"generators":{"w":{"kind":"permutation","map":{"a":"b","b":"a"}}}}"#)
        .unwrap()
        .build(&x);
    assert!(broken.is_err());
}

#[test]
fn hyperplane_json() {
    let z2 = CubeComplex::lattice(2);
    let h = Hyperplane::wall(1, -3);
    assert_eq!(hyperplane_to_json(&z2, &h), json!({"axis": 1, "wall": -3}));
    assert_eq!(hyperplane_from_json(&z2, &hyperplane_to_json(&z2, &h)).unwrap(), h);
    let sq = square();
    let dc = hyperplane_from_json(&sq, &json!(["d", "c"])).unwrap();
    assert_eq!(hyperplane_to_json(&sq, &dc), json!(["a", "b"]));
    assert!(hyperplane_from_json(&sq, &json!(["a", "c"])).is_err());
    assert!(hyperplane_from_json(&z2, &json!({"axis": 0, "wall": 1, "x": 2})).is_err());
}

#[test]
fn generation_is_seeded_and_median() {
    for family in Family::ALL {
        for seed in 0..20 {
            let g = generate_complex(seed, family).unwrap();
            assert_eq!(g, generate_complex(seed, family).unwrap());
            assert_eq!(g.repairs, 0);
            let x = g.document.build(true).unwrap();
            let f = x.as_finite().unwrap();
            assert!(f.verify_median_graph().is_ok());
            assert!(f.len() <= 60);
            match family {
                Family::Tree => assert_eq!(f.edges().len() + 1, f.len()),
                Family::Staircase => assert!(x.dimension() <= 2),
                Family::Product => assert!(x.dimension() >= 2),
            }
        }
    }
    assert_eq!(generate_case(99).unwrap(), generate_case(99).unwrap());
}

#[test]
fn automorphism_groups() {
    assert_eq!(group_order(&square()), 8);
    assert_eq!(group_order(&finite(&["a", "b", "c"], &[("a", "b"), ("b", "c")])), 2);
    let asymmetric = finite(
        &["0", "1", "2", "3", "4", "5", "6"],
        &[("0", "1"), ("1", "2"), ("2", "3"), ("3", "4"), ("4", "5"), ("2", "6")],
    );
    assert_eq!(automorphism_count_brute_force(asymmetric.as_finite().unwrap()), 1);
    assert_eq!(group_order(&asymmetric), 1);
    assert!(automorphism_search(&asymmetric).unwrap().is_empty());
}

#[test]
fn automorphism_groups_match_brute_force() {
    let mut checked = 0;
    for seed in 0..400 {
        let case = generate_case(seed).unwrap();
        let x = case.complex.build(true).unwrap();
        let f = x.as_finite().unwrap();
        if f.len() > 8 {
            continue;
        }
        assert_eq!(group_order(&x), automorphism_count_brute_force(f), "seed {seed}");
        checked += 1;
    }
    assert!(checked >= 20, "only {checked} small cases");
}

#[test]
fn oversized_search_is_refused() {
    let names: Vec<String> = (0..61).map(|i| format!("v{i}")).collect();
    let pairs: Vec<(usize, usize)> = (1..61).map(|i| (i - 1, i)).collect();
    let x = CubeComplex::finite(FiniteComplex::from_indices(names, &pairs).unwrap()).unwrap();
    assert!(matches!(automorphism_search(&x), Err(IoError::SizeExceeded { found: 61, .. })));
}

#[test]
fn dot_export() {
    let sq = square();
    let plain = export_dot(&sq, &Overlays::default());
    assert_eq!(plain.matches(" -- ").count(), 4);
    assert_eq!(plain.lines().filter(|l| l.ends_with("\";") && !l.contains(" -- ")).count(), 4);
    let coloured = export_dot(&sq, &Overlays { hyperplanes: true, ..Overlays::default() });
    let mut colours: Vec<&str> = coloured
        .lines()
        .filter_map(|l| l.split("color=\"").nth(1))
        .map(|rest| &rest[..7])
        .collect();
    colours.sort();
    colours.dedup();
    assert_eq!(colours.len(), 2);
    assert_eq!(coloured, export_dot(&sq, &Overlays { hyperplanes: true, ..Overlays::default() }));
}

#[test]
fn fuzz_driver() {
    assert!(matches!(run_fuzz(5, 1, &[]), Err(IoError::InvalidArguments(_))));
    assert!(matches!(run_fuzz(0, 1, &[Suite::Helly]), Err(IoError::InvalidArguments(_))));
    let one = run_fuzz(1, 42, &[Suite::TheoremA]).unwrap();
    assert!(one.is_clean());
    assert_eq!(one.suites[0].passed, 1);
    let report = run_fuzz(40, 3, &Suite::ALL).unwrap();
    assert!(report.is_clean(), "{:?}", report.failures);
    assert_eq!(report.to_json(), run_fuzz(40, 3, &Suite::ALL).unwrap().to_json());
    let helly = run_fuzz(100, 5, &[Suite::Helly]).unwrap();
    assert_eq!(helly.suites[0].passed, 100);
}
