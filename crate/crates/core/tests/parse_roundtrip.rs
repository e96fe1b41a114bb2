use powerstab_core::graph::SimpleGraph;
use powerstab_core::parse::{format_ideal, parse_ideal};
use powerstab_core::polymatroid::veronese_type_ideal;
use powerstab_core::{Error, MonomialIdeal};
use proptest::prelude::*;

fn ideal_strategy() -> impl Strategy<Value = MonomialIdeal> {
    (1usize..=5).prop_flat_map(|n| {
        prop::collection::vec(prop::collection::vec(0u32..4, n), 1..6)
            .prop_map(move |gens| MonomialIdeal::from_exponents(n, gens).unwrap())
    })
}

proptest! {
    #[test]
    fn print_then_parse_is_identity(i in ideal_strategy()) {
        let names: Vec<String> = (1..=i.n()).map(|k| format!("x{k}")).collect();
        let text = format_ideal(&i, &names);
        let back = parse_ideal(&text).unwrap();
        prop_assert_eq!(&back.ideal, &i);
        prop_assert_eq!(format_ideal(&back.ideal, &back.names), text);
    }

    #[test]
    fn custom_names_round_trip(i in ideal_strategy()) {
        let names: Vec<String> = (0..i.n()).map(|k| ((b'a' + k as u8) as char).to_string()).collect();
        let back = parse_ideal(&format_ideal(&i, &names)).unwrap();
        prop_assert_eq!(back.ideal, i);
        prop_assert_eq!(back.names, names);
    }

    #[test]
    fn vector_and_monomial_syntax_agree(i in ideal_strategy()) {
        let vectors: Vec<String> = i
            .generators()
            .iter()
            .map(|g| format!("({})", g.exponents().iter().map(u32::to_string).collect::<Vec<_>>().join(",")))
            .collect();
        let text = format!("vars x1..x{}\n{}\n", i.n(), vectors.join(", "));
        prop_assert_eq!(parse_ideal(&text).unwrap().ideal, i);
    }
}

#[test]
fn small_listed_ideal() {
    let p = parse_ideal("vars x1..x3\nx1*x2, x2*x3").unwrap();
    assert_eq!(p.ideal.len(), 2);
    assert_eq!(p.ideal.n(), 3);
}

#[test]
fn directive_expands_to_family() {
    let p = parse_ideal("edge_ideal cycle 5").unwrap();
    assert_eq!(p.ideal, SimpleGraph::cycle(5).unwrap().edge_ideal());
    let v = parse_ideal("veronese 4 d=3 c=2,1,1,1").unwrap();
    assert_eq!(v.ideal, veronese_type_ideal(4, 3, &[2, 1, 1, 1]).unwrap());
}

#[test]
fn errors_carry_positions() {
    for (text, line) in [("x1*x2\nx1^0", 2), ("x1*x2,", 1), ("vars a b\na*c", 2), ("x1 x2", 1)] {
        match parse_ideal(text) {
            Err(Error::Syntax { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
            other => panic!("{text:?} gave {other:?}"),
        }
    }
}
