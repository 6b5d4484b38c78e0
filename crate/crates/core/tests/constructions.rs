mod common;

use common::corpus;
use uba_core::constructions::miyano_hayashi_limited;
use uba_core::constructions::{
    bu_construct, build_default, miyano_hayashi, safety_fallback, u_construct, Algorithm,
    MhSuccessors,
};
use uba_core::error::ConstructionError;
use uba_core::io::parse_awa;
use uba_core::nba::DEFAULT_STATE_LIMIT;
use uba_core::verification::{ambiguity_check, audit_u_transitions, bounded_language_diff};
use uba_core::{Awa, Formula, StateSet};

fn t1() -> Awa {
    parse_awa(include_str!("data/t1.awa")).unwrap().awa
}

/// Three states without cycles among them, ending in explicit sinks that
/// are left out of the SCC analysis only if they lack self-loops. Here
/// every path ends after at most two letters in `tt` or `ff`.
fn acyclic() -> Awa {
    let (q1, q2) = (Formula::state(1), Formula::state(2));
    Awa::new(
        vec!["a".into(), "b".into()],
        0,
        StateSet::singleton(1),
        vec![
            vec![
                Formula::and([q1.clone(), q2.clone()]),
                Formula::or([q1, q2]),
            ],
            vec![Formula::True, Formula::False],
            vec![Formula::True, Formula::True],
        ],
    )
    .unwrap()
}

#[test]
fn t1_all_constructions_agree() {
    let a = t1();
    for algo in [
        Algorithm::Mh,
        Algorithm::Brv,
        Algorithm::Bu,
        Algorithm::U,
        Algorithm::Auto,
    ] {
        let b = build_default(&a, algo).unwrap();
        assert!(
            bounded_language_diff(&a, &b, 3, 4).is_equivalent(),
            "{algo}"
        );
    }
    assert!(ambiguity_check(&u_construct(&a).unwrap()).is_none());
    assert!(ambiguity_check(&bu_construct(&a).unwrap()).is_none());
}

#[test]
fn safety_fallback_on_acyclic_automaton() {
    let a = acyclic();
    assert!(a.scc_analysis().unwrap().is_empty());
    assert_eq!(u_construct(&a).unwrap_err(), ConstructionError::NoSccs);
    assert_eq!(Algorithm::Auto.resolve(&a).unwrap(), Algorithm::Safety);
    let b = safety_fallback(&a).unwrap();
    assert!(bounded_language_diff(&a, &b, 3, 4).is_equivalent());
    assert!(ambiguity_check(&b).is_none());
    assert_eq!(
        safety_fallback(&t1()).unwrap_err(),
        ConstructionError::HasSccs(2)
    );
}

#[test]
fn u_transitions_follow_the_definition() {
    for (i, a) in corpus(21, 80, 4).iter().enumerate() {
        let u = u_construct(a).unwrap();
        let v = audit_u_transitions(a, &u);
        assert!(v.is_empty(), "automaton {i}: {}", v[0]);
    }
}

#[test]
fn corpus_constructions_agree_and_are_unambiguous() {
    for (i, a) in corpus(22, 60, 4).iter().enumerate() {
        let u = u_construct(a).unwrap();
        let bu = bu_construct(a).unwrap();
        let mh = miyano_hayashi(a).unwrap();
        let mh_min = miyano_hayashi_limited(a, MhSuccessors::Minimal, DEFAULT_STATE_LIMIT).unwrap();
        assert!(mh_min.state_count() <= mh.state_count());
        for (name, r) in [
            ("u", bounded_language_diff(a, &u, 2, 3)),
            ("bu", bounded_language_diff(a, &bu, 2, 3)),
            ("mh", bounded_language_diff(a, &mh, 2, 3)),
            ("mh-min", bounded_language_diff(a, &mh_min, 2, 3)),
        ] {
            assert!(r.is_equivalent(), "automaton {i}, {name}: {:?}", r.verdict);
        }
        assert!(ambiguity_check(&u).is_none(), "automaton {i}");
        assert!(ambiguity_check(&bu).is_none(), "automaton {i}");
    }
}

#[test]
fn state_limit_is_reported() {
    let a = corpus(23, 1, 4).pop().unwrap();
    let err = uba_core::constructions::build(&a, Algorithm::U, 1).unwrap_err();
    assert_eq!(err, ConstructionError::TooLarge(1));
}
