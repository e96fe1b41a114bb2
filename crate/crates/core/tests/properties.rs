mod common;

use std::collections::BTreeSet;

use common::*;
use powerstab_core::primes::socle_basis;
use powerstab_core::{Monomial, MonomialIdeal};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn assert_clean(mismatches: Vec<String>) {
    assert!(mismatches.is_empty(), "{} mismatches: {mismatches:#?}", mismatches.len());
}

#[test]
fn colon_intersection_membership_match_box_oracle() {
    assert_clean(suites::colon_intersection_membership());
}

#[test]
fn depth_zero_exactly_when_socle_is_nonempty() {
    assert_clean(suites::depth_zero_iff_socle());
}

#[test]
fn relation_graph_of_edge_ideal_is_common_neighbour_graph() {
    assert_clean(suites::edge_ideal_relation_graphs());
}

#[test]
fn betti_tables_match_taylor_oracle() {
    assert_clean(suites::betti_tables_vs_taylor());
}

#[test]
fn socle_agrees_with_intersection_of_variable_colons() {
    let mut rng = StdRng::seed_from_u64(suites::SEED + 2);
    for _ in 0..suites::CASES {
        let n = rng.gen_range(1..=4);
        let i = random_ideal(&mut rng, n, 6, 3);
        let meet = (0..n)
            .map(|v| i.colon_monomial(&Monomial::var(n, v)))
            .reduce(|a, b| a.intersect(&b))
            .unwrap();
        let via_colons: BTreeSet<Monomial> = meet.generators().iter().filter(|g| !i.contains(g)).cloned().collect();
        let direct: BTreeSet<Monomial> = socle_basis(&i).unwrap().into_iter().collect();
        assert_eq!(direct, via_colons, "{i:?}");
    }
}

#[test]
fn oracle_ranks_agree_on_small_integer_matrices() {
    let mut rng = StdRng::seed_from_u64(suites::SEED + 5);
    for _ in 0..100 {
        let r = rng.gen_range(1..7);
        let c = rng.gen_range(1..7);
        let rows: Vec<Vec<i64>> = (0..r).map(|_| (0..c).map(|_| rng.gen_range(-2..=2)).collect()).collect();
        let q = rank_q(&rows);
        assert_eq!(q, rank_p(&rows, 1_000_000_007), "{rows:?}");
        assert!(rank_p(&rows, 2) <= q);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn power_is_repeated_product(gens in prop::collection::vec(prop::collection::vec(0u32..3, 3), 1..4), k in 1u32..4) {
        let i = MonomialIdeal::from_exponents(3, gens).unwrap();
        let mut expected = MonomialIdeal::unit(3);
        for _ in 0..k {
            expected = expected.multiply(&i);
        }
        prop_assert_eq!(i.power(k), expected);
    }

    #[test]
    fn colon_undoes_multiplication_by_monomial(gens in prop::collection::vec(prop::collection::vec(0u32..4, 3), 1..5), v in prop::collection::vec(0u32..3, 3)) {
        let i = MonomialIdeal::from_exponents(3, gens).unwrap();
        let v = Monomial::new(v);
        let shifted = i.multiply(&MonomialIdeal::principal(v.clone()));
        prop_assert_eq!(shifted.colon_monomial(&v), i);
    }

    #[test]
    fn intersection_is_contained_in_both(a in prop::collection::vec(prop::collection::vec(0u32..4, 3), 1..5), b in prop::collection::vec(prop::collection::vec(0u32..4, 3), 1..5)) {
        let a = MonomialIdeal::from_exponents(3, a).unwrap();
        let b = MonomialIdeal::from_exponents(3, b).unwrap();
        let m = a.intersect(&b);
        prop_assert!(m.is_subset_of(&a) && m.is_subset_of(&b));
        prop_assert!(a.multiply(&b).is_subset_of(&m));
    }
}
