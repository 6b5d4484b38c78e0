mod common;

use common::{buchi_game_suffix_sets, corpus, RunDagOracle};
use proptest::prelude::*;
use uba_core::lasso::LassoWord;
use uba_core::semantics::{
    awa_accepts, check_local_consistency, check_preorder_step, distance_profile,
    distance_rules_hold, preorders_from_distances, unique_sequence,
};

#[test]
fn suffix_sets_match_the_buchi_game() {
    for a in corpus(3, 60, 4) {
        for w in LassoWord::grid(2, 2, 3) {
            let rw = unique_sequence(&a, &w);
            assert_eq!(rw.entries(), buchi_game_suffix_sets(&a, &w).as_slice());
            for i in 0..w.len() {
                assert!(check_local_consistency(
                    &a,
                    *rw.get(i),
                    *rw.get(w.succ(i)),
                    w.letter(i)
                ));
            }
        }
    }
}

#[test]
fn distances_match_run_dag_enumeration() {
    let depth = 6;
    let mut deep = 0;
    for a in corpus(5, 60, 4) {
        let sccs = a.scc_analysis().unwrap();
        for w in LassoWord::grid(2, 2, 2) {
            let rw = unique_sequence(&a, &w);
            let d = distance_profile(&a, &w, &rw).unwrap();
            assert!(distance_rules_hold(&a, &w, &rw, &d));
            let mut oracle = RunDagOracle::new(&a, &w, &rw);
            for i in 0..w.len() {
                for (&q, &v) in d.get(i) {
                    let expected = (v <= depth).then_some(v);
                    assert_eq!(
                        oracle.distance(q, i, depth),
                        expected,
                        "q={q} i={i} w={w:?}"
                    );
                    deep += usize::from(v > 1);
                }
            }
            let po = preorders_from_distances(&sccs, &d);
            for i in 0..w.len() {
                let j = w.succ(i);
                for c in 0..sccs.len() {
                    assert!(check_preorder_step(
                        &a,
                        &sccs,
                        c,
                        *rw.get(i),
                        &po.get(i)[c],
                        *rw.get(j),
                        &po.get(j)[c],
                        w.letter(i)
                    ));
                }
            }
        }
    }
    assert!(deep > 100, "only {deep} distances above 1");
}

#[test]
fn duality_on_small_corpus() {
    for a in corpus(8, 40, 4) {
        let dual = a.dualize();
        for w in LassoWord::grid(2, 2, 2) {
            for q in 0..a.state_count() {
                assert_ne!(awa_accepts(&a, q, &w), awa_accepts(&dual, q, &w));
            }
        }
    }
}

fn arb_lasso() -> impl Strategy<Value = LassoWord> {
    (
        prop::collection::vec(0usize..2, 0..4),
        prop::collection::vec(0usize..2, 1..4),
    )
        .prop_map(|(u, v)| LassoWord::new(u, v).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn acceptance_ignores_lasso_presentation(w in arb_lasso(), seed in 0u64..1000) {
        let a = corpus(seed, 1, 4).pop().unwrap();
        let norm = w.normalize();
        prop_assert_eq!(awa_accepts(&a, 0, &w), awa_accepts(&a, 0, &norm));
        // u v^ω = (u v_0)(v_1 … v_k v_0)^ω = u (v v)^ω
        let v = w.period();
        let rotated = LassoWord::new(w.unroll(w.prefix().len() + 1), [&v[1..], &v[..1]].concat()).unwrap();
        let doubled = LassoWord::new(w.prefix().to_vec(), v.repeat(2)).unwrap();
        for other in [rotated, doubled] {
            prop_assert_eq!(awa_accepts(&a, 0, &w), awa_accepts(&a, 0, &other));
        }
    }
}
