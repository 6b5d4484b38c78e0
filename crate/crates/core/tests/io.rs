use std::fs;

use uba_core::constructions::{build_default, u_construct, Algorithm};
use uba_core::harness::{corpus_params, random_weak_awa};
use uba_core::io::{parse_awa, parse_hoa, print_awa, print_hoa, stats_json, ParseError};
use uba_core::verification::ambiguity_check;
use uba_core::{Awa, Formula, StateSet};

fn data(name: &str) -> String {
    fs::read_to_string(format!("{}/tests/{name}", env!("CARGO_MANIFEST_DIR"))).unwrap()
}

#[test]
fn corpus_round_trips() {
    for i in 0..200 {
        let a = random_weak_awa(&corpus_params(42, i, 5, 2)).unwrap();
        let text = print_awa(&a);
        let back = parse_awa(&text).unwrap().awa;
        assert_eq!(back, a, "record {i}");
        assert_eq!(print_awa(&back), text);
    }
}

#[test]
fn renaming_changes_the_text() {
    let a = parse_awa(&data("data/t1.awa")).unwrap().awa;
    let swapped = a.permuted(&[1, 0]);
    assert_ne!(print_awa(&a), print_awa(&swapped));
}

#[test]
fn sinks_are_printed_explicitly() {
    let a = Awa::new(
        vec!["a".into()],
        0,
        StateSet::EMPTY,
        vec![vec![Formula::or([Formula::state(0), Formula::True])]],
    )
    .unwrap()
    .complete();
    let text = print_awa(&a);
    assert!(text.contains("states: 2"), "{text}");
    assert!(text.contains("accepting: 1\n"), "{text}");
    assert!(text.contains("state 1:\n  a -> 1\n"), "{text}");
}

#[test]
fn golden_hoa_for_t1() {
    let a = parse_awa(&data("data/t1.awa")).unwrap().awa;
    let u = u_construct(&a).unwrap();
    let text = print_hoa(&u, true);
    assert_eq!(text, data("golden/t1_u_named.hoa"));
    let back = parse_hoa(&text).unwrap();
    assert_eq!(back, u.map_payload(ToString::to_string));
    assert!(ambiguity_check(&back).is_none());
}

#[test]
fn hoa_without_names_round_trips_structure() {
    let a = random_weak_awa(&corpus_params(9, 4, 4, 2)).unwrap();
    let b = build_default(&a, Algorithm::Bu).unwrap();
    let back = parse_hoa(&print_hoa(&b, false)).unwrap();
    assert_eq!(back.state_count(), b.state_count());
    assert_eq!(
        back.transitions().collect::<Vec<_>>(),
        b.transitions().collect::<Vec<_>>()
    );
    assert_eq!(back.initial(), b.initial());
}

#[test]
fn stats_for_single_scc() {
    let a = random_weak_awa(&corpus_params(1, 0, 4, 2)).unwrap();
    let u = build_default(&a, Algorithm::U).unwrap();
    let v: serde_json::Value = serde_json::from_str(&stats_json(&u, &a)).unwrap();
    assert_eq!(v["scc_count"], 1);
    assert_eq!(v["largest_scc"], a.state_count());
    assert_eq!(v["within_bound"], true);
    assert_eq!(v["macrostates"], u.state_count());
}

#[test]
fn parse_errors_carry_positions() {
    let text = data("data/t1.awa").replace("0 & 1", "0 & )");
    match parse_awa(&text) {
        Err(ParseError::Syntax {
            line,
            column,
            expected,
            found,
        }) => {
            assert_eq!(line, 9);
            assert_eq!(column, 12);
            assert!(expected.contains("state number"), "{expected}");
            assert_eq!(found, "`)`");
        }
        other => panic!("{other:?}"),
    }
}
