use super::*;
use crate::action::{verify_certificate, Certificate};
use crate::complex::FiniteComplex;

fn p(c: &[i64]) -> Vertex {
    Vertex::Point(c.to_vec())
}

fn reflection(c: i64) -> Automorphism {
    Automorphism::Affine {
        signs: vec![-1],
        perm: vec![0],
        translate: vec![c],
    }
}

fn dihedral() -> (CubeComplex, GroupAction) {
    let z = CubeComplex::lattice(1);
    let named = vec![("s".to_string(), reflection(0)), ("t".to_string(), reflection(2))];
    let action = GroupAction::new(&z, named, p(&[0])).unwrap();
    (z, action)
}

fn square_rotation() -> (CubeComplex, GroupAction) {
    let f = FiniteComplex::new(&["a", "b", "c", "d"], &[("a", "b"), ("b", "c"), ("c", "d"), ("d", "a")]).unwrap();
    let x = CubeComplex::finite(f).unwrap();
    let action =
        GroupAction::new(&x, vec![("r".into(), Automorphism::Permutation(vec![1, 2, 3, 0]))], Vertex::Index(0)).unwrap();
    (x, action)
}

#[test]
fn base_sets() {
    let (z, action) = dihedral();
    let base = base_hyperplane_set(&z, &action);
    assert!(base.per_generator[0].is_empty());
    assert_eq!(base.per_generator[1], vec![Hyperplane::wall(0, 0), Hyperplane::wall(0, 1)]);
    assert_eq!(base.union.len(), 2);
    let trivial = GroupAction::new(&z, vec![], p(&[0])).unwrap();
    assert!(base_hyperplane_set(&z, &trivial).union.is_empty());
    let (sq, rot) = square_rotation();
    assert_eq!(base_hyperplane_set(&sq, &rot).union.len(), 2);
}

#[test]
fn thresholds() {
    assert_eq!(threshold(2, 1), 6);
    assert_eq!(threshold(4, 2), 32);
    assert_eq!(threshold(0, 3), 0);
}

#[test]
fn far_elements() {
    let (z, action) = dihedral();
    match find_far_element(&z, &action, 6, 1000).unwrap() {
        FarElement::Found { word, distance } => {
            assert!(distance >= 6);
            assert_eq!(word, Word::parse("t,s,t,s,t"));
            assert_eq!(action.apply(&word, &p(&[0])).unwrap(), p(&[6]));
        }
        other => panic!("{other:?}"),
    }
    let (sq, rot) = square_rotation();
    assert_eq!(
        find_far_element(&sq, &rot, 100, 1000).unwrap(),
        FarElement::AllBounded { orbit: (0..4).map(Vertex::Index).collect() }
    );
    let trivial = GroupAction::new(&z, vec![], p(&[0])).unwrap();
    assert_eq!(
        find_far_element(&z, &trivial, 0, 10).unwrap(),
        FarElement::Found { word: Word::empty(), distance: 0 }
    );
    assert!(matches!(
        find_far_element(&z, &action, 1000, 50),
        Err(FixedPointError::BudgetExceeded { cap: 50 })
    ));
}

#[test]
fn translated_paths() {
    let (z, action) = dihedral();
    let single = build_translated_path(&z, &action, &Word::parse("t")).unwrap();
    assert_eq!(single.vertices, z.geodesic(&p(&[0]), &p(&[2])));
    assert!(single.edges.iter().all(|e| e.prefix.is_empty()));
    let ts = build_translated_path(&z, &action, &Word::parse("t,s")).unwrap();
    assert_eq!(ts.segments, vec![(0, 2), (2, 2)]);
    assert_eq!(ts.vertices.first(), Some(&p(&[0])));
    assert_eq!(ts.vertices.last(), Some(&p(&[2])));
    assert_eq!(ts.edges.len(), 2);
    let st = build_translated_path(&z, &action, &Word::parse("s,t")).unwrap();
    assert_eq!(st.segments, vec![(0, 0), (0, 2)]);
    assert_eq!(st.vertices.last(), Some(&p(&[-2])));
    assert!(st.edges.iter().all(|e| e.prefix == Word::parse("s")));
    let empty = build_translated_path(&z, &action, &Word::empty()).unwrap();
    assert_eq!(empty.vertices, vec![p(&[0])]);
}

#[test]
fn dihedral_yields_a_witness() {
    let (z, action) = dihedral();
    match fixed_point_or_witness(&z, &action, &Budget::default()).unwrap() {
        FixedPointOutcome::HyperbolicWitness { word, certificate, candidates } => {
            let g = action.evaluate(&z, &word).unwrap();
            assert!(verify_certificate(&z, &g, &certificate));
            match certificate {
                Certificate::Hyperbolic { triple, .. } => {
                    assert!(triple.iter().all(|h| matches!(h, Hyperplane::Wall { axis: 0, .. })));
                }
                other => panic!("{other:?}"),
            }
            assert_eq!(candidates.len(), 3);
            // the witness is a translation
            let shift = g.apply(&p(&[0]));
            assert_eq!(g.apply(&p(&[5])), p(&[5 + shift.as_point()[0]]));
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn finite_actions_fix_a_cube() {
    let (sq, rot) = square_rotation();
    assert_eq!(
        fixed_point_or_witness(&sq, &rot, &Budget::default()).unwrap(),
        FixedPointOutcome::FixedPoint { cube: Cube::new((0..4).map(Vertex::Index).collect()) }
    );
}

#[test]
fn reflections_of_the_plane_fix_the_origin() {
    let z2 = CubeComplex::lattice(2);
    let s = Automorphism::Affine { signs: vec![-1, 1], perm: vec![0, 1], translate: vec![0, 0] };
    let u = Automorphism::Affine { signs: vec![1, -1], perm: vec![0, 1], translate: vec![0, 0] };
    let action = GroupAction::new(&z2, vec![("s".into(), s), ("u".into(), u)], p(&[0, 0])).unwrap();
    assert_eq!(
        fixed_point_or_witness(&z2, &action, &Budget::default()).unwrap(),
        FixedPointOutcome::FixedPoint { cube: Cube::vertex(p(&[0, 0])) }
    );
}

#[test]
fn reflections_about_an_edge_fix_the_edge() {
    // x -> 1 - x swaps 0 and 1
    let z = CubeComplex::lattice(1);
    let single = GroupAction::new(&z, vec![("r".into(), reflection(1))], p(&[0])).unwrap();
    let budget = Budget { orbit_cap: 100, ..Budget::default() };
    assert_eq!(
        fixed_point_or_witness(&z, &single, &budget).unwrap(),
        FixedPointOutcome::FixedPoint { cube: Cube::new(vec![p(&[0]), p(&[1])]) }
    );
}

#[test]
fn exhausted_orbit_budget_is_undecided() {
    let (z, action) = dihedral();
    let budget = Budget { orbit_cap: 3, ..Budget::default() };
    assert!(matches!(
        fixed_point_or_witness(&z, &action, &budget).unwrap(),
        FixedPointOutcome::Undecided { .. }
    ));
}
