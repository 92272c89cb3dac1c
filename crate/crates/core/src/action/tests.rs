use proptest::prelude::*;

use super::*;
use crate::complex::{Cube, FiniteComplex};
use crate::hyperplane::{Hyperplane, Sign};

fn p(c: &[i64]) -> Vertex {
    Vertex::Point(c.to_vec())
}

fn affine(signs: &[i64], perm: &[usize], translate: &[i64]) -> Automorphism {
    Automorphism::Affine {
        signs: signs.to_vec(),
        perm: perm.to_vec(),
        translate: translate.to_vec(),
    }
}

fn square() -> CubeComplex {
    CubeComplex::finite(
        FiniteComplex::new(&["a", "b", "c", "d"], &[("a", "b"), ("b", "c"), ("c", "d"), ("d", "a")]).unwrap(),
    )
    .unwrap()
}

fn path() -> CubeComplex {
    CubeComplex::finite(FiniteComplex::new(&["a", "b", "c"], &[("a", "b"), ("b", "c")]).unwrap()).unwrap()
}

fn rotation() -> Automorphism {
    Automorphism::Permutation(vec![1, 2, 3, 0])
}

fn dihedral() -> (CubeComplex, GroupAction) {
    let z = CubeComplex::lattice(1);
    let named = vec![
        ("s".to_string(), affine(&[-1], &[0], &[0])),
        ("t".to_string(), affine(&[-1], &[0], &[2])),
    ];
    let action = GroupAction::new(&z, named, p(&[0])).unwrap();
    (z, action)
}

#[test]
fn automorphism_checks() {
    let z = CubeComplex::lattice(1);
    assert!(verify_automorphism(&z, &affine(&[-1], &[0], &[0])).is_ok());
    let sq = square();
    assert!(verify_automorphism(&sq, &Automorphism::identity(&sq)).is_ok());
    match verify_automorphism(&sq, &Automorphism::Permutation(vec![1, 0, 2, 3])) {
        Err(AutomorphismViolation::BrokenEdge(e)) => assert!(!sq.is_adjacent(
            &Automorphism::Permutation(vec![1, 0, 2, 3]).apply(&e.tail),
            &Automorphism::Permutation(vec![1, 0, 2, 3]).apply(&e.head)
        )),
        other => panic!("swap accepted: {other:?}"),
    }
    assert!(matches!(
        verify_automorphism(&sq, &Automorphism::Permutation(vec![0, 0, 1, 2])),
        Err(AutomorphismViolation::Malformed(_))
    ));
    assert!(verify_automorphism(&z, &affine(&[2], &[0], &[0])).is_err());
}

#[test]
fn word_evaluation() {
    let (z, action) = dihedral();
    let v = p(&[0]);
    assert_eq!(action.apply(&Word::empty(), &v).unwrap(), v);
    assert_eq!(action.apply(&Word::parse("t,s"), &v).unwrap(), p(&[2]));
    let ss = action.evaluate(&z, &Word::parse("s s")).unwrap();
    for c in -5..5 {
        assert_eq!(ss.apply(&p(&[c])), p(&[c]));
    }
    assert!(matches!(
        action.apply(&Word::parse("q"), &v),
        Err(ActionError::UnknownGenerator(_))
    ));
    assert_eq!(Word::empty().to_string(), "e");
    assert_eq!(Word::parse("t, s").to_string(), "t,s");
}

#[test]
fn inverses_are_derived() {
    let z = CubeComplex::lattice(1);
    let action = GroupAction::new(&z, vec![("t".into(), Automorphism::translation(vec![1]))], p(&[0])).unwrap();
    let names: Vec<&str> = action.generators().iter().map(|g| g.name.as_str()).collect();
    assert_eq!(names, ["t", "t^-1"]);
    assert_eq!(action.generators()[0].inverse, 1);
    let (_, dihedral) = dihedral();
    assert_eq!(dihedral.generators().len(), 2);
    assert!(dihedral.generators().iter().enumerate().all(|(i, g)| g.inverse == i));
    let t = action.resolve(&Word::parse("t t t^-1 t")).unwrap();
    assert_eq!(action.reduce_letters(&t), vec![0, 0]);
    assert!(matches!(
        GroupAction::new(
            &z,
            vec![("t".into(), Automorphism::translation(vec![1])), ("t".into(), Automorphism::translation(vec![2]))],
            p(&[0])
        ),
        Err(ActionError::DuplicateName(_))
    ));
}

#[test]
fn orbits() {
    let sq = square();
    let action = GroupAction::new(&sq, vec![("r".into(), rotation())], Vertex::Index(0)).unwrap();
    assert_eq!(
        orbit(&sq, &action, &Vertex::Index(0), 100),
        OrbitResult::Complete((0..4).map(Vertex::Index).collect())
    );
    let z = CubeComplex::lattice(1);
    let shift = GroupAction::new(&z, vec![("t".into(), Automorphism::translation(vec![1]))], p(&[0])).unwrap();
    assert!(matches!(orbit(&z, &shift, &p(&[0]), 10), OrbitResult::CapExceeded { .. }));
    let trivial = GroupAction::new(&sq, vec![], Vertex::Index(2)).unwrap();
    assert_eq!(orbit(&sq, &trivial, &Vertex::Index(2), 10), OrbitResult::Complete(vec![Vertex::Index(2)]));
}

#[test]
fn translation_is_hyperbolic() {
    let z = CubeComplex::lattice(1);
    let t = Automorphism::translation(vec![2]);
    let c = classify(&z, &t, &p(&[0]), &Budget::default());
    match c.certificate() {
        Some(Certificate::Hyperbolic { hyperplane, power, triple, sides }) => {
            assert_eq!(*hyperplane, Hyperplane::wall(0, 0));
            assert_eq!(*power, 1);
            assert_eq!(*triple, [Hyperplane::wall(0, -2), Hyperplane::wall(0, 0), Hyperplane::wall(0, 2)]);
            assert_eq!(*sides, [Sign::Minus, Sign::Plus]);
        }
        other => panic!("{other:?}"),
    }
    assert!(verify_certificate(&z, &t, c.certificate().unwrap()));
    assert_eq!(translation_length_estimate(&z, &t, &p(&[3]), 8).value(), 2.0);
}

#[test]
fn rotation_is_elliptic() {
    let sq = square();
    let c = classify(&sq, &rotation(), &Vertex::Index(0), &Budget::default());
    let whole = Cube::new((0..4).map(Vertex::Index).collect());
    assert_eq!(c, Classification::Certified(Certificate::Elliptic { cube: whole }));
    assert_eq!(translation_length_estimate(&sq, &rotation(), &Vertex::Index(0), 4).distance, 0);
}

#[test]
fn glide_reflection_is_hyperbolic() {
    let z2 = CubeComplex::lattice(2);
    let g = affine(&[1, -1], &[0, 1], &[1, 0]);
    let c = classify(&z2, &g, &p(&[0, 0]), &Budget::default());
    match c.certificate() {
        Some(Certificate::Hyperbolic { hyperplane, triple, .. }) => {
            assert_eq!(*hyperplane, Hyperplane::wall(0, 0));
            assert_eq!(*triple, [Hyperplane::wall(0, -1), Hyperplane::wall(0, 0), Hyperplane::wall(0, 1)]);
        }
        other => panic!("{other:?}"),
    }
    let e = translation_length_estimate(&z2, &g, &p(&[0, 0]), 6);
    assert_eq!((e.distance, e.n), (6, 6));
    assert_eq!(e.reduced(), (1, 1));
}

#[test]
fn reflections_are_elliptic() {
    let (z, action) = dihedral();
    let s = &action.generators()[0].map;
    let t = &action.generators()[1].map;
    let budget = Budget::default();
    assert_eq!(
        classify(&z, s, &p(&[0]), &budget),
        Classification::Certified(Certificate::Elliptic { cube: Cube::vertex(p(&[0])) })
    );
    assert_eq!(
        classify(&z, t, &p(&[0]), &budget),
        Classification::Certified(Certificate::Elliptic { cube: Cube::vertex(p(&[1])) })
    );
}

#[test]
fn tiny_budgets_stay_undecided() {
    let z = CubeComplex::lattice(1);
    let flip = affine(&[-1], &[0], &[9]);
    let budget = Budget { power: 1, radius: 2, orbit_cap: 10 };
    assert_eq!(classify(&z, &flip, &p(&[0]), &budget), Classification::Undecided { power: 1, radius: 2 });
}

#[test]
fn fixed_sets() {
    let sq = square();
    let fixed = fix_set(&sq, &[rotation()]).unwrap();
    assert!(fixed.vertices.is_empty());
    assert_eq!(fixed.cubes, vec![Cube::new((0..4).map(Vertex::Index).collect())]);
    let all = fix_set(&sq, &[Automorphism::identity(&sq)]).unwrap();
    assert_eq!(all.vertices.len(), 4);
    assert_eq!(all.cubes.len(), 9);
    let pth = path();
    let swap = Automorphism::Permutation(vec![2, 1, 0]);
    assert_eq!(fix_set(&pth, &[swap.clone()]).unwrap().vertices, vec![Vertex::Index(1)]);
    assert!(matches!(fix_set(&CubeComplex::lattice(1), &[]), Err(FixError::NotFinite)));

    let same = fix_intersection(&sq, &[rotation()], &[rotation()]).unwrap();
    assert!(same.equal);
    let with_identity = fix_intersection(&sq, &[rotation()], &[Automorphism::identity(&sq)]).unwrap();
    assert_eq!(with_identity.union, fix_set(&sq, &[rotation()]).unwrap());
    let half = fix_intersection(&pth, &[swap], &[]).unwrap();
    assert_eq!(half.union.vertices, vec![Vertex::Index(1)]);
    assert!(half.union.is_subset(&half.intersection));
}

#[test]
fn bounded_orbits_fix_a_cube() {
    let sq = square();
    let action = GroupAction::new(&sq, vec![("r".into(), rotation())], Vertex::Index(0)).unwrap();
    let corners: Vec<Vertex> = (0..4).map(Vertex::Index).collect();
    assert_eq!(bounded_orbit_fixed_cube(&sq, &action, &corners).unwrap(), Cube::new(corners.clone()));
    let pth = path();
    let swap = GroupAction::new(&pth, vec![("w".into(), Automorphism::Permutation(vec![2, 1, 0]))], Vertex::Index(0))
        .unwrap();
    assert_eq!(
        bounded_orbit_fixed_cube(&pth, &swap, &[Vertex::Index(0), Vertex::Index(2)]).unwrap(),
        Cube::vertex(Vertex::Index(1))
    );
    assert_eq!(
        bounded_orbit_fixed_cube(&pth, &swap, &[Vertex::Index(1)]).unwrap(),
        Cube::vertex(Vertex::Index(1))
    );
    assert!(matches!(
        bounded_orbit_fixed_cube(&pth, &swap, &[Vertex::Index(0)]),
        Err(FixError::OrbitNotClosed(_))
    ));
}

#[test]
fn product_automorphisms() {
    let x = CubeComplex::product(path(), path());
    let swap = Automorphism::Product {
        left: Box::new(Automorphism::identity(&path())),
        right: Box::new(Automorphism::identity(&path())),
        swap: true,
    };
    assert!(verify_automorphism(&x, &swap).is_ok());
    let v = Vertex::pair(Vertex::Index(0), Vertex::Index(2));
    assert_eq!(swap.apply(&v), Vertex::pair(Vertex::Index(2), Vertex::Index(0)));
    assert!(swap.compose(&swap).unwrap().is_identity(&x));
    let c = classify(&x, &swap, &Vertex::pair(Vertex::Index(0), Vertex::Index(0)), &Budget::default());
    assert!(c.is_elliptic());
}

proptest! {
    #[test]
    fn affine_inverse_and_composition(
        s in proptest::collection::vec(prop_oneof![Just(-1i64), Just(1i64)], 2),
        swap in any::<bool>(),
        t in proptest::collection::vec(-4i64..4, 2),
        q in proptest::collection::vec(-6i64..6, 2),
    ) {
        let perm = if swap { vec![1, 0] } else { vec![0, 1] };
        let g = affine(&s, &perm, &t);
        let z2 = CubeComplex::lattice(2);
        prop_assert!(verify_automorphism(&z2, &g).is_ok());
        let v = Vertex::Point(q);
        prop_assert_eq!(g.inverse().apply(&g.apply(&v)), v.clone());
        let gg = g.compose(&g).unwrap();
        prop_assert_eq!(gg.apply(&v), g.apply(&g.apply(&v)));
        prop_assert_eq!(g.power(&z2, 3).apply(&v), g.apply(&gg.apply(&v)));
    }

    #[test]
    fn certificates_never_conflict(
        s in proptest::collection::vec(prop_oneof![Just(-1i64), Just(1i64)], 2),
        swap in any::<bool>(),
        t in proptest::collection::vec(-3i64..3, 2),
    ) {
        let perm = if swap { vec![1, 0] } else { vec![0, 1] };
        let g = affine(&s, &perm, &t);
        let z2 = CubeComplex::lattice(2);
        let v = p(&[0, 0]);
        let hyperbolic = hyperbolic_certificate(&z2, &g, &v, 8);
        let elliptic = elliptic_certificate(&z2, &g, &v, 8);
        prop_assert!(!(hyperbolic.is_some() && elliptic.is_some()));
        if let Some(c) = hyperbolic.or(elliptic) {
            prop_assert!(verify_certificate(&z2, &g, &c));
        }
    }
}
