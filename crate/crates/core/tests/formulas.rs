use proptest::prelude::*;
use uba_core::preorder::tpo;
use uba_core::{Formula, StateSet, TotalPreorder};

const UNIVERSE: usize = 5;

fn arb_formula() -> impl Strategy<Value = Formula> {
    let leaf = prop_oneof![
        1 => Just(Formula::True),
        1 => Just(Formula::False),
        6 => (0..UNIVERSE).prop_map(Formula::state),
    ];
    leaf.prop_recursive(4, 24, 3, |inner| {
        prop_oneof![
            prop::collection::vec(inner.clone(), 1..4).prop_map(Formula::and),
            prop::collection::vec(inner, 1..4).prop_map(Formula::or),
        ]
    })
}

fn all_sets() -> impl Iterator<Item = StateSet> {
    StateSet::full(UNIVERSE).subsets()
}

proptest! {
    #[test]
    fn eval_is_monotone(f in arb_formula(), a in 0u64..32, b in 0u64..32) {
        let (small, big) = (StateSet::from_bits(a & b), StateSet::from_bits(a));
        prop_assert!(!f.eval(small) || f.eval(big));
    }

    #[test]
    fn minimal_models_match_brute_force(f in arb_formula()) {
        let models: Vec<StateSet> = all_sets().filter(|y| f.eval(*y)).collect();
        let mut minimal: Vec<StateSet> = models
            .iter()
            .copied()
            .filter(|y| !models.iter().any(|z| z != y && z.is_subset(*y)))
            .collect();
        minimal.sort();
        prop_assert_eq!(f.minimal_models(StateSet::full(UNIVERSE)), minimal);
    }

    #[test]
    fn dual_evaluates_complement(f in arb_formula(), bits in 0u64..32) {
        // Y ⊨ dual(f) iff Q \ Y ⊭ f
        let y = StateSet::from_bits(bits);
        prop_assert_eq!(f.dual().eval(y), !f.eval(y.complement(UNIVERSE)));
        prop_assert_eq!(f.dual().dual(), f);
    }

    #[test]
    fn constants_only_at_the_top(f in arb_formula()) {
        fn inner_constant(f: &Formula) -> bool {
            match f {
                Formula::And(cs) | Formula::Or(cs) => cs.iter().any(|c| c.is_constant() || inner_constant(c)),
                _ => false,
            }
        }
        prop_assert!(!inner_constant(&f));
    }
}

#[test]
fn formula_examples() {
    let (x, y, z) = (Formula::state(0), Formula::state(1), Formula::state(2));
    let xy = Formula::and([x.clone(), y.clone()]);
    assert!(!xy.eval(StateSet::singleton(0)));
    assert!(Formula::True.eval(StateSet::EMPTY));
    let f = Formula::or([xy.clone(), z.clone()]);
    assert!(f.eval(StateSet::singleton(2)));
    let u = StateSet::full(3);
    let absorb = Formula::and([x.clone(), Formula::or([x, y])]);
    assert_eq!(absorb.minimal_models(u), vec![StateSet::singleton(0)]);
    assert!(Formula::False.minimal_models(u).is_empty());
    let mut models = f.minimal_models(u);
    models.sort_by_key(|m| m.len());
    assert_eq!(
        models,
        vec![StateSet::singleton(2), [0usize, 1].into_iter().collect()]
    );
}

/// Ordered set partitions of `{0..n}` counted as surjections onto an
/// initial segment `{0..m}` of block indices.
fn ordered_partitions_brute(n: usize) -> u128 {
    let mut count = 0;
    let total = (n as u64).pow(n as u32).max(1);
    for code in 0..total {
        let mut c = code;
        let mut used = vec![false; n.max(1)];
        for _ in 0..n {
            used[(c % n as u64) as usize] = true;
            c /= n as u64;
        }
        let m = used.iter().filter(|u| **u).count();
        if n == 0 || used[..m].iter().all(|u| *u) {
            count += 1;
        }
    }
    count
}

#[test]
fn tpo_matches_enumeration() {
    for n in 0..=6 {
        let brute = ordered_partitions_brute(n);
        assert_eq!(tpo(n), Some(brute), "n = {n}");
        assert_eq!(
            TotalPreorder::enumerate(StateSet::full(n)).len() as u128,
            brute
        );
    }
    assert_eq!(
        (1..=5).map(|n| tpo(n).unwrap()).collect::<Vec<_>>(),
        [1, 3, 13, 75, 541]
    );
}

#[test]
fn tpo_growth_rate() {
    // tpo(n)^(1/n) / n approaches 1/(e ln 2)
    let target = 1.0 / (std::f64::consts::E * std::f64::consts::LN_2);
    let ratio = (tpo(8).unwrap() as f64).powf(1.0 / 8.0) / 8.0;
    assert!((ratio - target).abs() / target < 0.25, "ratio {ratio}");
}

proptest! {
    #[test]
    fn preorder_prefixes_are_downward_closed(ranks in prop::collection::vec(0u8..4, 1..6)) {
        let po = TotalPreorder::from_ranks(ranks.iter().enumerate().map(|(q, r)| (q, *r)));
        for k in 0..=po.block_count() {
            let p = po.prefix(k);
            for q in p {
                for q2 in po.domain() {
                    prop_assert!(!po.leq(q2, q) || p.contains(q2));
                }
            }
        }
        for q in po.domain() {
            for q2 in po.domain() {
                prop_assert_eq!(po.leq(q, q2), ranks[q] <= ranks[q2]);
            }
        }
    }
}
