use eulerlab::folded_proof::{
    check_facet_criterion, facet_shadows, fold_flags, sample_transversal, verify_proof_folded, FoldedReport,
};
use eulerlab::polytope::{generate, Family};
use eulerlab::schlegel_proof::{verify_proof_schlegel, SchlegelReport};
use eulerlab::{Error, Rational, Strategy};

#[test]
fn octahedron_both_ways() {
    let oct = generate(&Family::CrossPolytope(3), 0).unwrap();
    let s = verify_proof_schlegel(&oct, 2, 7).unwrap();
    assert!(s.pass);
    assert_eq!(s.cells.len(), 7);
    assert_eq!(s.total, Rational::from(6 - 12));
    let f = verify_proof_folded(&oct, 7).unwrap();
    assert!(f.pass);
    assert_eq!(f.total, s.total);
}

#[test]
fn cross_polytope_four() {
    let p = generate(&Family::CrossPolytope(4), 0).unwrap();
    let s = verify_proof_schlegel(&p, 0, 1).unwrap();
    assert!(s.pass);
    // 8 − 24 + 32
    assert_eq!(s.total, Rational::from(16));
    assert!(verify_proof_folded(&p, 1).unwrap().pass);
}

#[test]
fn reports_round_trip_through_json() {
    let p = generate(&Family::Simplex(4), 0).unwrap();
    let s = verify_proof_schlegel(&p, 1, 3).unwrap();
    let back: SchlegelReport = serde_json::from_str(&serde_json::to_string(&s).unwrap()).unwrap();
    assert_eq!(back, s);
    let f = verify_proof_folded(&p, 3).unwrap();
    let back: FoldedReport = serde_json::from_str(&serde_json::to_string(&f).unwrap()).unwrap();
    assert_eq!(back, f);
}

#[test]
fn folded_criterion_detects_a_moved_flag() {
    let p = generate(&Family::Hypercube(3), 0).unwrap();
    let tr = sample_transversal(&p, 2).unwrap();
    let mut flags = fold_flags(&p, &tr, Strategy::Sequential).unwrap();
    let shadows = facet_shadows(&p, &tr, Strategy::Sequential).unwrap();
    assert_eq!(check_facet_criterion(&p, &tr, &flags, &shadows), Ok(()));
    let wrong = (0..p.facets().len()).find(|&i| i != flags[0].facet).unwrap();
    flags[0].facet = wrong;
    assert!(check_facet_criterion(&p, &tr, &flags, &shadows).is_err());
}

#[test]
fn low_dimensions_are_rejected() {
    let sq = generate(&Family::Hypercube(2), 0).unwrap();
    assert_eq!(verify_proof_schlegel(&sq, 0, 0).unwrap_err(), Error::SchlegelDimension(2));
    let seg = generate(&Family::Hypercube(1), 0).unwrap();
    assert!(verify_proof_folded(&seg, 0).is_err());
}

#[test]
fn facet_index_checked() {
    let cube = generate(&Family::Hypercube(3), 0).unwrap();
    assert_eq!(
        verify_proof_schlegel(&cube, 6, 0).unwrap_err(),
        Error::FacetIndex { index: 6, count: 6 }
    );
}
