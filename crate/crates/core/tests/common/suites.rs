//! Seeded randomized comparisons against the oracles. Each suite returns its
//! mismatches as readable strings.

use std::collections::{BTreeMap, BTreeSet};

use powerstab_core::homology::{betti_table, depth};
use powerstab_core::primes::socle_basis;
use powerstab_core::relation_graph::RelationGraph;
use powerstab_core::{FieldChoice, Monomial, MonomialIdeal};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use super::*;

pub const SEED: u64 = 0x5eed_0001;
pub const CASES: usize = 200;

const FIELDS: [FieldChoice; 2] = [FieldChoice::Rationals, FieldChoice::Prime(2)];

fn random_n(rng: &mut StdRng) -> usize {
    rng.gen_range(1..=4)
}

pub fn colon_intersection_membership() -> Vec<String> {
    let mut rng = StdRng::seed_from_u64(SEED);
    let mut out = Vec::new();
    for case in 0..CASES {
        let n = random_n(&mut rng);
        let i = random_ideal(&mut rng, n, 5, 3);
        let j = random_ideal(&mut rng, n, 3, 3);
        let (gi, gj) = (exps(&i), exps(&j));
        if gen_set(&i.colon_ideal(&j).unwrap()) != colon_oracle(n, &gi, &gj) {
            out.push(format!("case {case}: colon {i:?} : {j:?}"));
        }
        if gen_set(&i.intersect(&j)) != intersection_oracle(n, &gi, &gj) {
            out.push(format!("case {case}: intersection {i:?} and {j:?}"));
        }
        for u in box_points(&vec![4; n]) {
            if i.contains(&Monomial::new(u.clone())) != member(&gi, &u) {
                out.push(format!("case {case}: membership of {u:?} in {i:?}"));
            }
        }
    }
    out
}

pub fn depth_zero_iff_socle() -> Vec<String> {
    let mut rng = StdRng::seed_from_u64(SEED + 1);
    let mut out = Vec::new();
    for case in 0..CASES {
        let n = random_n(&mut rng);
        let i = random_ideal(&mut rng, n, 6, 3);
        let socle = socle_basis(&i).unwrap();
        let as_exps: BTreeSet<Vec<u32>> = socle.iter().map(|m| m.exponents().to_vec()).collect();
        if as_exps != socle_oracle(n, &exps(&i)) {
            out.push(format!("case {case}: socle of {i:?}"));
        }
        for f in FIELDS {
            let d = depth(&i, f).unwrap();
            if (d == 0) == socle.is_empty() {
                out.push(format!("case {case}: {i:?} over {f}: depth {d}, socle size {}", socle.len()));
            }
        }
    }
    out
}

pub fn edge_ideal_relation_graphs() -> Vec<String> {
    let mut rng = StdRng::seed_from_u64(SEED + 3);
    let mut out = Vec::new();
    for case in 0..CASES {
        let v = rng.gen_range(2..=8);
        let edges = random_graph(&mut rng, v, 0.4);
        if edges.is_empty() {
            continue;
        }
        let gens = edges.iter().map(|&(a, b)| {
            let mut e = vec![0; v];
            e[a] = 1;
            e[b] = 1;
            e
        });
        let i = MonomialIdeal::from_exponents(v, gens).unwrap();
        let adjacent = |a: usize, b: usize| edges.contains(&(a.min(b), a.max(b)));
        let expected: BTreeSet<(usize, usize)> = (0..v)
            .flat_map(|a| (a + 1..v).map(move |b| (a, b)))
            .filter(|&(a, b)| (0..v).any(|c| c != a && c != b && adjacent(a, c) && adjacent(b, c)))
            .collect();
        let graph = RelationGraph::build(&i);
        if graph.edge_set() != expected || !graph.verify_witnesses(&i) {
            out.push(format!("case {case}: graph {edges:?}"));
        }
    }
    out
}

pub fn betti_tables_vs_taylor() -> Vec<String> {
    let mut rng = StdRng::seed_from_u64(SEED + 4);
    let mut out = Vec::new();
    for case in 0..CASES {
        let n = random_n(&mut rng);
        let i = random_ideal(&mut rng, n, 6, 3);
        for f in FIELDS {
            let got: BTreeMap<(usize, Vec<u32>), usize> = betti_table(&i, f)
                .unwrap()
                .entries()
                .into_iter()
                .map(|e| ((e.homological_degree, e.multidegree.exponents().to_vec()), e.value))
                .collect();
            if got != taylor_betti(&i, f) {
                out.push(format!("case {case}: {i:?} over {f}"));
            }
        }
    }
    out
}
