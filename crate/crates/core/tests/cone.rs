use conic_core::cone::{normal_face_map, Cone};
use conic_core::exactlin::rational::{dot, rat, RVector};
use conic_core::library::cone_library;
use num_traits::Signed;
use proptest::prelude::*;

fn vectors(d: usize, max: usize) -> impl Strategy<Value = Vec<RVector>> {
    prop::collection::vec(prop::collection::vec(-3i64..=3, d), 1..=max).prop_map(|vs| {
        vs.into_iter()
            .filter(|v| v.iter().any(|x| *x != 0))
            .map(|v| v.into_iter().map(rat).collect())
            .collect()
    })
}

fn random_cone() -> impl Strategy<Value = Cone> {
    (2usize..=4).prop_flat_map(|d| vectors(d, 6).prop_map(move |g| Cone::from_generators(&g, &[], d).unwrap()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn double_description_round_trip(d in 2usize..=4, seed in vectors(4, 6)) {
        let gens: Vec<RVector> = seed.iter().map(|v| v[..d].to_vec()).filter(|v| v.iter().any(|x| *x != rat(0))).collect();
        let c = Cone::from_generators(&gens, &[], d).unwrap();
        for g in &gens {
            prop_assert!(c.contains(g));
        }
        for a in c.inequalities() {
            for g in &gens {
                prop_assert!(!dot(a, g).is_positive());
            }
        }
        let from_h = Cone::from_h(c.inequalities(), c.equalities().basis_rows(), d).unwrap();
        prop_assert_eq!(&from_h, &c);
        let from_v = Cone::from_generators(c.generators(), c.lineality().basis_rows(), d).unwrap();
        prop_assert_eq!(&from_v, &c);
    }

    #[test]
    fn polar_is_an_order_reversing_involution(a in random_cone(), b in random_cone()) {
        prop_assert_eq!(&a.polar().polar(), &a);
        if a.d() == b.d() {
            let meet = a.intersect(&b).unwrap();
            prop_assert!(a.contains_cone(&meet) && b.contains_cone(&meet));
            prop_assert!(meet.polar().contains_cone(&a.polar()));
            prop_assert!(meet.polar().contains_cone(&b.polar()));
            // (A + B)° = A° ∩ B°
            let sum = a.minkowski_sum(&b).unwrap();
            prop_assert_eq!(sum.polar(), a.polar().intersect(&b.polar()).unwrap());
        }
    }

    #[test]
    fn euler_relation_on_random_cones(c in random_cone()) {
        let lat = c.face_lattice();
        prop_assert_eq!(lat.euler_sum(), lat.euler_expected());
        prop_assert_eq!(lat.f_vector.iter().sum::<usize>(), lat.faces.len());
    }
}

#[test]
fn polar_involution_on_library() {
    let lib = cone_library().unwrap();
    assert!(lib.len() >= 20);
    for (name, c) in &lib {
        assert_eq!(&c.polar().polar(), c, "{name}");
        assert_eq!(c.polar().dim() + c.lineality_dim(), c.d(), "{name}");
    }
    for (_, a) in &lib {
        for (_, b) in &lib {
            if a.d() == b.d() && a.contains_cone(b) {
                assert!(b.polar().contains_cone(&a.polar()));
            }
        }
    }
}

#[test]
fn normal_faces_form_an_antitone_bijection() {
    for (name, c) in cone_library().unwrap() {
        let (lat, polar_lat) = (c.face_lattice(), c.polar().face_lattice());
        let map = normal_face_map(&lat, &polar_lat);
        let mut seen = map.clone();
        seen.sort_unstable();
        seen.dedup();
        assert_eq!(seen.len(), lat.faces.len(), "{name}: not injective");
        assert_eq!(polar_lat.faces.len(), lat.faces.len(), "{name}: not surjective");
        for (i, f) in lat.faces.iter().enumerate() {
            assert_eq!(f.dim + polar_lat.faces[map[i]].dim, c.d(), "{name}");
            for (j, _) in lat.faces.iter().enumerate() {
                if lat.order[i][j] {
                    assert!(polar_lat.order[map[j]][map[i]], "{name}: order not reversed");
                }
            }
        }
    }
}

#[test]
fn library_shapes() {
    let lib: std::collections::HashMap<_, _> = cone_library().unwrap().into_iter().collect();
    assert_eq!(lib["square-cone"].face_lattice().f_vector, vec![1, 4, 4, 1]);
    assert_eq!(lib["pentagon-cone"].face_lattice().f_vector, vec![1, 5, 5, 1]);
    assert_eq!(lib["cube-cone4"].face_lattice().f_vector, vec![1, 8, 12, 6, 1]);
    assert_eq!(lib["cube-cone4-polar"].face_lattice().f_vector, vec![1, 6, 12, 8, 1]);
    assert_eq!(lib["braid-chamber3"].lineality_dim(), 1);
    assert_eq!(lib["wedge-slab4"].dim(), 3);
    assert!(lib["zero3"].is_zero());
    assert!(lib["plane3"].is_subspace());
}
