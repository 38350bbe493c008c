use eulerlab::euler::{check_euler, f_vector};
use eulerlab::exact::{Rational, Vector};
use eulerlab::polytope::{brute_force_face_lattice, build_polytope, VertexSet};
use eulerlab::schlegel_proof::{classify_flag, place_flags, sample_general_line, Bin};
use eulerlab::{projection::schlegel, Polytope};
use proptest::prelude::*;

fn point_cloud(dim: usize, max_points: usize) -> impl Strategy<Value = Vec<Vector>> {
    prop::collection::vec(prop::collection::vec(-6i64..=6, dim), dim + 1..=max_points)
        .prop_map(|pts| pts.iter().map(|c| Vector::from_ints(c)).collect())
}

fn full_dimensional(dim: usize, max_points: usize) -> impl Strategy<Value = Polytope> {
    point_cloud(dim, max_points)
        .prop_filter_map("not full-dimensional", move |pts| build_polytope(&pts).ok().filter(|p| p.dim() == dim))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn facet_closure_matches_oracle(p in full_dimensional(3, 10)) {
        prop_assert_eq!(brute_force_face_lattice(&p).unwrap(), p.lattice().clone());
    }

    #[test]
    fn lattices_are_diamonds(p in full_dimensional(4, 9)) {
        prop_assert!(p.lattice().diamond_violation().is_none());
        prop_assert!(check_euler(&p));
    }

    #[test]
    fn hull_is_idempotent(pts in point_cloud(3, 12)) {
        if let Ok(p) = build_polytope(&pts) {
            let again = p.rebuild().unwrap();
            prop_assert_eq!(again.vertex_count(), p.vertex_count());
            prop_assert_eq!(f_vector(again.lattice()), f_vector(p.lattice()));
            prop_assert!(p.validate().is_ok());
        }
    }

    #[test]
    fn lower_dimensional_input_keeps_its_dimension(pts in point_cloud(2, 8)) {
        // embed in z = x + y inside 3-space
        let lifted: Vec<Vector> = pts
            .iter()
            .map(|v| Vector::new(vec![v[0].clone(), v[1].clone(), &v[0] + &v[1]]))
            .collect();
        if let (Ok(flat), Ok(lift)) = (build_polytope(&pts), build_polytope(&lifted)) {
            prop_assert_eq!(lift.dim(), flat.dim());
            prop_assert_eq!(f_vector(lift.lattice()), f_vector(flat.lattice()));
        }
    }

    #[test]
    fn every_flag_lands_in_one_bin(p in full_dimensional(3, 9), seed in 0u64..1000) {
        let cx = schlegel(&p, seed as usize % p.facets().len()).unwrap();
        let u = sample_general_line(&cx, seed).unwrap().direction;
        let flags = place_flags(&cx);
        prop_assert_eq!(flags.len(), 2 * cx.faces.len());
        let mut outside = 0;
        for f in &flags {
            match classify_flag(&cx, &u, f).unwrap() {
                Bin::Outside => outside += 1,
                Bin::Cell(c) => prop_assert!(cx.cells[c].labels.iter().any(|&l| cx.faces[f.face].vertices.contains(l))),
            }
        }
        // polygon carrier: one outward flag per edge and per vertex, one more at both vertices extreme along u
        let carrier_faces = cx.carrier.polytope.lattice().counts();
        prop_assert_eq!(outside, carrier_faces[0] + carrier_faces[1] + 2);
    }

    #[test]
    fn rational_json_round_trip(n in -10_000i64..10_000, d in 1i64..10_000) {
        let r = Rational::new(n, d);
        let s = serde_json::to_string(&r).unwrap();
        prop_assert_eq!(serde_json::from_str::<Rational>(&s).unwrap(), r.clone());
        prop_assert_eq!(s.trim_matches('"').parse::<Rational>().unwrap(), r);
    }

    #[test]
    fn vertex_set_json_round_trip(ids in prop::collection::btree_set(0usize..200, 0..20)) {
        let set: VertexSet = ids.iter().copied().collect();
        let s = serde_json::to_string(&set).unwrap();
        prop_assert_eq!(serde_json::from_str::<VertexSet>(&s).unwrap(), set.clone());
        prop_assert_eq!(set.to_vec(), ids.into_iter().collect::<Vec<_>>());
    }
}
