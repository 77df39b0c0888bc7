mod common;

use common::*;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn divided_differences_are_symmetric(g in arb_dd_poly(), perm in 0usize..6) {
        check_dd_symmetry(&g, perm)?;
    }

    #[test]
    fn divided_differences_telescope(g in arb_dd_poly(), j in 0usize..3) {
        check_dd_telescoping(&g, j)?;
    }

    #[test]
    fn confluent_divided_differences_are_derivatives(g in arb_dd_poly()) {
        check_dd_confluent(&g)?;
    }

    #[test]
    fn divided_differences_match_vandermonde(
        g in arb_dd_poly(),
        x in -3i64..=3,
        pts in prop::collection::vec(-6i64..=6, 2..=4),
    ) {
        check_dd_vandermonde(&g, x, &pts)?;
    }

    #[test]
    fn printed_polynomials_parse_back(p in arb_triple().prop_map(|t| t.0)) {
        check_parse_roundtrip(&p)?;
    }

    #[test]
    fn polynomials_form_a_commutative_ring((a, b, c) in arb_triple()) {
        check_ring_axioms(&a, &b, &c)?;
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn colength_is_invariant(
        ideal in prop_oneof![arb_zero_dim(2, true), arb_zero_dim(3, true)],
        rotate in 0usize..4,
        shear in prop::collection::vec(-2i64..=2, 3),
        quad in -2i64..=2,
    ) {
        check_colength_invariance(&ideal, rotate, &shear, quad)?;
    }

    #[test]
    fn colength_agrees_with_linear_algebra(
        ideal in prop_oneof![arb_zero_dim(2, true), arb_zero_dim(3, true)],
    ) {
        check_oracle(&ideal, 16)?;
    }

    #[test]
    fn zero_dimensional_milnor_number_counts_points(
        ideal in prop_oneof![arb_zero_dim(2, false), arb_zero_dim(3, false)],
        seed in 1u64..50,
    ) {
        check_mu_plus_one(&ideal, seed)?;
    }
}

#[test]
fn corpus_colengths_match_the_oracle() {
    let corpus = corpus();
    assert!(corpus.len() >= 20);
    for ideal in &corpus {
        check_oracle(ideal, 24).unwrap();
    }
}

#[test]
fn corpus_colengths_are_invariant() {
    for (i, ideal) in corpus().iter().enumerate() {
        check_colength_invariance(ideal, i, &[1, -1, 2], 1).unwrap();
    }
}

#[test]
fn corpus_complete_intersections_count_points() {
    let cis = ci_corpus();
    assert!(cis.len() >= 10);
    for ideal in &cis {
        check_mu_plus_one(ideal, 1).unwrap();
    }
}

#[test]
fn oracle_on_hand_computed_ideals() {
    // (x^2, y^3): basis 1, x, y, xy, y^2, xy^2
    assert_eq!(
        oracle_colength(&ideal(&["x", "y"], &["x^2", "y^3"]), 10),
        Some(6)
    );
    // (xy, x^2 + y^3): 1, x, y, y^2, y^3
    assert_eq!(
        oracle_colength(&ideal(&["x", "y"], &["x*y", "x^2 + y^3"]), 10),
        Some(5)
    );
    assert_eq!(oracle_colength(&ideal(&["x"], &["x + 1"]), 10), Some(0));
    // a curve never stabilizes
    assert_eq!(oracle_colength(&ideal(&["x", "y"], &["x*y"]), 8), None);
}
