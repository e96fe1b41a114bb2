mod common;

use powerstab_core::corpus::{corpus_entries, corpus_run, corpus_run_against, golden, GOLDEN_POINTERS};
use powerstab_core::graph::SimpleGraph;
use powerstab_core::homology::lcm_lattice;
use powerstab_core::polymatroid::graphic_matroid_ideal;
use powerstab_core::relation_graph::{default_names, RelationGraph};
use powerstab_core::MonomialIdeal;
use serde_json::json;

fn figure_one() -> MonomialIdeal {
    let g = SimpleGraph::new(7, [(0, 1), (1, 2), (2, 3), (3, 0), (1, 4), (4, 5), (5, 6), (6, 4)]).unwrap();
    graphic_matroid_ideal(&g).unwrap()
}

#[test]
fn shipped_corpus_is_green() {
    let summary = corpus_run().unwrap();
    let names: Vec<&str> = summary.outcomes.iter().map(|o| o.entry.as_str()).collect();
    for required in ["rp2", "c5", "c6", "c7", "figure1_graphic"] {
        assert!(names.contains(&required), "{required} missing from corpus");
    }
    assert!(names.iter().any(|n| n.starts_with("transversal")));
    assert!(names.iter().any(|n| n.starts_with("veronese")));
    let diffs: Vec<_> = summary.mismatches().collect();
    assert!(diffs.is_empty(), "{diffs:#?}");
}

#[test]
fn tampered_golden_value_turns_red_with_diff() {
    let mut g = golden();
    g["c5"]["/depth/per_power"][0]["depth"] = json!(3);
    let summary = corpus_run_against(&g).unwrap();
    assert!(!summary.passed());
    let diffs: Vec<_> = summary.mismatches().collect();
    assert_eq!(diffs.len(), 1);
    assert_eq!(diffs[0].entry, "c5");
    assert_eq!(diffs[0].pointer, "/depth/per_power");
    assert_eq!(diffs[0].expected[0]["depth"], json!(3));
    assert_eq!(diffs[0].actual[0]["depth"], json!(2));
}

#[test]
fn golden_missing_an_entry_is_an_error() {
    let mut g = golden();
    g.as_object_mut().unwrap().remove("rp2");
    assert!(corpus_run_against(&g).is_err());
}

#[test]
fn golden_file_is_key_sorted_and_complete() {
    let g = golden();
    let text = serde_json::to_string_pretty(&g).unwrap();
    let shipped = include_str!("../corpus/golden.json");
    assert_eq!(text.trim_end(), shipped.trim_end(), "golden file is not in canonical pretty form");
    for e in corpus_entries() {
        let obj = g[e.name].as_object().unwrap();
        assert_eq!(obj.len(), GOLDEN_POINTERS.len(), "{}", e.name);
    }
}

#[test]
fn figure_one_relation_graph_matches_dot_golden() {
    let i = figure_one();
    let dot = RelationGraph::build(&i).to_dot(&default_names(i.n()), true);
    assert_eq!(dot, include_str!("data/figure1_gamma.dot"));
}

#[test]
fn dot_export_shapes() {
    let empty = RelationGraph::build(&MonomialIdeal::zero(3));
    assert_eq!(empty.to_dot(&default_names(3), false), "graph Gamma {\n}\n");

    let c5 = SimpleGraph::cycle(5).unwrap().edge_ideal();
    let dot = RelationGraph::build(&c5).to_dot(&default_names(5), false);
    assert_eq!(dot.lines().filter(|l| l.ends_with("\";") && !l.contains("--")).count(), 5);
    assert_eq!(dot.lines().filter(|l| l.contains("--")).count(), 5);
    assert!(dot.ends_with("}\n") && !dot.contains('\r'));
}

#[test]
fn five_cycle_lcm_lattice_is_the_edge_unions() {
    let c5 = SimpleGraph::cycle(5).unwrap().edge_ideal();
    let lattice = lcm_lattice(&c5);
    // 5 edges, 5 paths of length two, 5 four-vertex sets and the full support.
    assert_eq!(lattice.len(), 16);
    let gens = common::exps(&c5);
    let mut brute = std::collections::BTreeSet::new();
    for mask in 1u32..32 {
        let l: Vec<u32> = (0..5)
            .map(|v| (0..5).filter(|g| mask >> g & 1 == 1).map(|g| gens[g][v]).max().unwrap())
            .collect();
        brute.insert(l);
    }
    let got: std::collections::BTreeSet<Vec<u32>> = lattice.iter().map(|m| m.exponents().to_vec()).collect();
    assert_eq!(got, brute);
}
