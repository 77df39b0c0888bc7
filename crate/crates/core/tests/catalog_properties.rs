mod common;

use common::*;
use proptest::prelude::*;
use singchi_core::catalog::{
    catalog, catalog_lenient, moduli_params, ALTERNATE_MODULI, DEFAULT_MODULI,
};
use singchi_core::euler::image_chi;
use singchi_core::multiple_points::{invariant_tuple, InvariantTuple};
use singchi_core::standard_basis::Engine;

fn arb_tuple() -> impl Strategy<Value = InvariantTuple> {
    (
        (0u64..40, 0u64..40, 0u64..40, 0u64..40),
        (0u8..=1, 0u8..=1, 0u8..=1, 0u64..4),
    )
        .prop_map(|((a, b, c, d), (b2, b3, b4, q))| InvariantTuple {
            mu_d2: a,
            mu_d2_h: b,
            mu_d3: c,
            mu_d3_h1: d,
            beta2: b2,
            beta3: b3,
            beta4: b4,
            q,
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn triple_point_milnor_numbers_share_parity(germ in arb_catalog_germ()) {
        let t = invariant_tuple(&Engine::default(), &germ.germ, 1).unwrap().tuple;
        prop_assert_eq!(t.mu_d3 % 2, t.mu_d3_h1 % 2, "{}", germ.name);
    }

    #[test]
    fn multiple_point_spaces_empty_in_cascade(germ in arb_catalog_germ()) {
        let t = invariant_tuple(&Engine::default(), &germ.germ, 1).unwrap().tuple;
        prop_assert!(t.beta4 <= t.beta3 && t.beta3 <= t.beta2, "{}: {:?}", germ.name, t);
        prop_assert_eq!(t.beta4 == 1, t.q > 0);
    }

    #[test]
    fn tuples_do_not_depend_on_the_seed(germ in arb_catalog_germ(), seed in 2u64..1000) {
        let engine = Engine::default();
        let a = invariant_tuple(&engine, &germ.germ, 1).unwrap().tuple;
        let b = invariant_tuple(&engine, &germ.germ, seed).unwrap().tuple;
        prop_assert_eq!(a, b, "{}", germ.name);
    }

    #[test]
    fn catalog_germs_give_consistent_euler_characteristics(germ in arb_catalog_germ()) {
        let t = invariant_tuple(&Engine::default(), &germ.germ, 1).unwrap().tuple;
        let r = image_chi(&t).unwrap();
        prop_assert!(r.consistency, "{}: {:?}", germ.name, r.routes);
        prop_assert_eq!(r.chi_dis, 1 - r.mu_i);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    // The three routes are linear in the tuple, so they agree whenever the
    // exact divisions go through, realizable or not.
    #[test]
    fn euler_routes_agree_on_arbitrary_tuples(t in arb_tuple()) {
        if let Ok(r) = image_chi(&t) {
            prop_assert!(r.consistency, "{:?}: {:?}", t, r.routes);
            prop_assert_eq!(r.routes.direct, r.chi_dis + r.chi_difference);
        }
    }
}

#[test]
fn tuples_do_not_depend_on_moduli() {
    let engine = Engine::default();
    for name in SINGLE_ROWS {
        let a = catalog_lenient(name, &moduli_params(DEFAULT_MODULI)).unwrap();
        let b = catalog_lenient(name, &moduli_params(ALTERNATE_MODULI)).unwrap();
        let ta = invariant_tuple(&engine, &a.germ, 1).unwrap().tuple;
        let tb = invariant_tuple(&engine, &b.germ, 1).unwrap().tuple;
        assert_eq!(ta, tb, "{name}");
    }
}

fn k_param(k: i64) -> std::collections::BTreeMap<String, singchi_core::poly::Rational> {
    [("k".to_string(), singchi_core::poly::rat(k))].into()
}

#[test]
fn family_members_grow_with_the_parameter() {
    let engine = Engine::default();
    for (name, range) in FAMILIES {
        let mut last: Option<i64> = None;
        // members with an inadmissible parameter are skipped
        for germ in range
            .clone()
            .filter_map(|k| catalog(name, &k_param(k)).ok())
        {
            let t = invariant_tuple(&engine, &germ.germ, 1).unwrap().tuple;
            let mu = image_chi(&t).unwrap().mu_i;
            assert_eq!(mu, germ.expected_mu_i, "{}", germ.name);
            if let Some(prev) = last {
                assert!(mu > prev, "{}: {mu} after {prev}", germ.name);
            }
            last = Some(mu);
        }
    }
}
