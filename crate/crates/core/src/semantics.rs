//! Ground-truth semantics on lasso words: AWA acceptance, the unique
//! sequence of accepting-suffix sets, distance functions and the total
//! preorders derived from them.
//!
//! Everything here works directly from the automaton definition and never
//! consults the constructions, so it can serve as an oracle for them.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::awa::Awa;
use crate::formula::Formula;
use crate::lasso::LassoWord;
use crate::preorder::TotalPreorder;
use crate::scc::{SccAnalysis, SccKind};
use crate::set::StateSet;

/// Per-position annotations of a lasso word. Entry `i` describes the
/// suffix starting at lasso position `i`; positions at or beyond the prefix
/// repeat with the period.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeriodicProfile<T> {
    prefix_len: usize,
    entries: Vec<T>,
}

impl<T> PeriodicProfile<T> {
    pub fn new(prefix_len: usize, entries: Vec<T>) -> Self {
        assert!(
            entries.len() > prefix_len,
            "profile needs at least one periodic entry"
        );
        PeriodicProfile {
            prefix_len,
            entries,
        }
    }

    pub fn entries(&self) -> &[T] {
        &self.entries
    }

    /// Annotation at lasso position `i`.
    pub fn get(&self, i: usize) -> &T {
        &self.entries[i]
    }

    /// Annotation of the `t`-th suffix of the infinite word.
    pub fn at(&self, t: usize) -> &T {
        let period = self.entries.len() - self.prefix_len;
        if t < self.prefix_len {
            &self.entries[t]
        } else {
            &self.entries[self.prefix_len + (t - self.prefix_len) % period]
        }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// `R_w`: position `i` holds the states accepting the suffix from `i`.
pub type SetProfile = PeriodicProfile<StateSet>;

/// Distance value per state in `(Q1 ∩ R) ∪ (A \ Q1)`.
pub type DistanceMap = BTreeMap<usize, u32>;

pub type DistanceProfile = PeriodicProfile<DistanceMap>;

/// One total preorder per tracked SCC (round-robin index order).
pub type PreorderProfile = PeriodicProfile<Vec<TotalPreorder>>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SemanticsError {
    #[error("state {state} at position {position} never leaves its SCC; the set profile is not the accepting-suffix sequence")]
    InfiniteDistance { position: usize, state: usize },
    #[error("profile length {found} does not match lasso length {expected}")]
    LengthMismatch { expected: usize, found: usize },
}

/// For every lasso position `i`, the set of states accepting `w[i..]`.
///
/// Solves a Boolean fixpoint over `(state, position)` pairs component by
/// component, sinks first: greatest fixpoint inside accepting SCCs, least
/// fixpoint inside rejecting ones. Panics if `a` is not weak.
pub fn accepting_suffix_sets(a: &Awa, w: &LassoWord) -> Vec<StateSet> {
    let analysis = a
        .scc_analysis()
        .unwrap_or_else(|e| panic!("acceptance on lassos needs a weak automaton: {e}"));
    let len = w.len();
    let mut val = vec![StateSet::EMPTY; len];
    for comp in analysis.components().iter().rev() {
        if comp.kind == SccKind::Accepting {
            for v in val.iter_mut() {
                *v = v.union(comp.states);
            }
        }
        loop {
            let mut changed = false;
            for i in 0..len {
                let next = val[w.succ(i)];
                for q in comp.states {
                    let holds = a.delta(q, w.letter(i)).eval(next);
                    if holds != val[i].contains(q) {
                        changed = true;
                        if holds {
                            val[i].insert(q);
                        } else {
                            val[i].remove(q);
                        }
                    }
                }
            }
            if !changed {
                break;
            }
        }
    }
    val
}

/// `w ∈ L(A^from)`.
pub fn awa_accepts(a: &Awa, from: usize, w: &LassoWord) -> bool {
    accepting_suffix_sets(a, w)[0].contains(from)
}

/// The unique sequence `R_w = Q^0_1 Q^1_1 …` restricted to one lasso.
pub fn unique_sequence(a: &Awa, w: &LassoWord) -> SetProfile {
    PeriodicProfile::new(w.prefix().len(), accepting_suffix_sets(a, w))
}

/// Local consistency: every `q ∈ Q1` has `Q1' ⊨ δ(q,σ)` and every
/// `q ∉ Q1` has `Q \ Q1' ⊨ δ̂(q,σ)`.
pub fn check_local_consistency(a: &Awa, q1: StateSet, q1_next: StateSet, letter: usize) -> bool {
    let n = a.state_count();
    let q2_next = q1_next.complement(n);
    (0..n).all(|q| {
        if q1.contains(q) {
            a.delta(q, letter).eval(q1_next)
        } else {
            a.delta(q, letter).dual().eval(q2_next)
        }
    })
}

/// The level domain `(Q1 ∩ R) ∪ (A \ Q1)`.
pub fn distance_domain(analysis: &SccAnalysis, q1: StateSet) -> StateSet {
    q1.intersection(analysis.rejecting())
        .union(analysis.accepting().difference(q1))
}

/// Everything needed to test a state's obligation against a threshold.
pub(crate) struct Obligation {
    formula: Formula,
    /// States outside the SCC that count as discharged.
    outside: StateSet,
    /// Next-level states of the same SCC that carry a distance.
    inside: StateSet,
}

fn obligation(
    a: &Awa,
    analysis: &SccAnalysis,
    q: usize,
    q1_next: StateSet,
    letter: usize,
) -> Obligation {
    let c = analysis.scc(analysis.scc_of(q).expect("domain state in a tracked SCC"));
    let n = a.state_count();
    match c.kind {
        SccKind::Rejecting => Obligation {
            formula: a.delta(q, letter).clone(),
            outside: q1_next.difference(c.states),
            inside: q1_next.intersection(c.states),
        },
        SccKind::Accepting => Obligation {
            formula: a.delta(q, letter).dual(),
            outside: q1_next.union(c.states).complement(n),
            inside: c.states.difference(q1_next),
        },
        SccKind::Transient => unreachable!(),
    }
}

fn within(inside: StateSet, next: &DistanceMap, bound: i64) -> StateSet {
    inside
        .iter()
        .filter(|r| next.get(r).is_some_and(|&d| i64::from(d) <= bound))
        .collect()
}

/// The unique consistent distance functions for `R_w` over one lasso.
///
/// `d_i(q)` is the least `k ≥ 1` such that the states outside `q`'s SCC
/// together with the same-SCC successors at distance `≤ k-1` satisfy
/// `δ(q, w[i])` (or `δ̂` for accepting SCCs). Computed by layered value
/// iteration: round `k` fixes every pair whose obligation is met using only
/// values fixed in earlier rounds.
pub fn distance_profile(
    a: &Awa,
    w: &LassoWord,
    rw: &SetProfile,
) -> Result<DistanceProfile, SemanticsError> {
    if rw.len() != w.len() {
        return Err(SemanticsError::LengthMismatch {
            expected: w.len(),
            found: rw.len(),
        });
    }
    let analysis = a
        .scc_analysis()
        .expect("distance functions need a weak automaton");
    let len = w.len();
    let obligations: Vec<Vec<(usize, Obligation)>> = (0..len)
        .map(|i| {
            distance_domain(&analysis, *rw.get(i))
                .iter()
                .map(|q| {
                    (
                        q,
                        obligation(a, &analysis, q, *rw.get(w.succ(i)), w.letter(i)),
                    )
                })
                .collect()
        })
        .collect();
    let mut dist: Vec<DistanceMap> = vec![DistanceMap::new(); len];
    let mut pending: usize = obligations.iter().map(Vec::len).sum();
    let mut k: u32 = 1;
    while pending > 0 {
        let mut fixed = Vec::new();
        for (i, obs) in obligations.iter().enumerate() {
            let next = &dist[w.succ(i)];
            for (q, ob) in obs {
                if dist[i].contains_key(q) {
                    continue;
                }
                let avail = ob.outside.union(within(ob.inside, next, i64::from(k) - 1));
                if ob.formula.eval(avail) {
                    fixed.push((i, *q));
                }
            }
        }
        if fixed.is_empty() {
            let (position, state) = obligations
                .iter()
                .enumerate()
                .flat_map(|(i, obs)| obs.iter().map(move |(q, _)| (i, *q)))
                .find(|(i, q)| !dist[*i].contains_key(q))
                .unwrap();
            return Err(SemanticsError::InfiniteDistance { position, state });
        }
        pending -= fixed.len();
        for (i, q) in fixed {
            dist[i].insert(q, k);
        }
        k += 1;
    }
    Ok(PeriodicProfile::new(w.prefix().len(), dist))
}

/// Rules R1/R2 (both the a- and b-parts) between two consecutive levels.
pub fn check_distance_step(
    a: &Awa,
    analysis: &SccAnalysis,
    q1: StateSet,
    dist: &DistanceMap,
    q1_next: StateSet,
    dist_next: &DistanceMap,
    letter: usize,
) -> bool {
    let domain: StateSet = dist.keys().copied().collect();
    if domain != distance_domain(analysis, q1) {
        return false;
    }
    dist.iter().all(|(&q, &d)| {
        if d == 0 {
            return false;
        }
        let ob = obligation(a, analysis, q, q1_next, letter);
        let with = |bound: i64| ob.outside.union(within(ob.inside, dist_next, bound));
        let part_a = ob.formula.eval(with(i64::from(d) - 1));
        let part_b = d == 1 || !ob.formula.eval(with(i64::from(d) - 2));
        part_a && part_b
    })
}

/// Checks R1/R2 at every position of a distance profile.
pub fn distance_rules_hold(a: &Awa, w: &LassoWord, rw: &SetProfile, d: &DistanceProfile) -> bool {
    let analysis = a.scc_analysis().expect("weak automaton");
    (0..w.len()).all(|i| {
        let j = w.succ(i);
        check_distance_step(
            a,
            &analysis,
            *rw.get(i),
            d.get(i),
            *rw.get(j),
            d.get(j),
            w.letter(i),
        )
    })
}

/// Orders the states of each tracked SCC by their distance value.
pub fn preorders_from_distances(analysis: &SccAnalysis, d: &DistanceProfile) -> PreorderProfile {
    let entries = d
        .entries()
        .iter()
        .map(|dist| {
            (0..analysis.len())
                .map(|c| {
                    let states = analysis.scc(c).states;
                    TotalPreorder::from_ranks(
                        dist.iter()
                            .filter(|(q, _)| states.contains(**q))
                            .map(|(&q, &v)| (q, v)),
                    )
                })
                .collect()
        })
        .collect();
    PeriodicProfile::new(d.prefix_len, entries)
}

/// Rule R1' (rejecting SCC) or R2' (accepting SCC) for tracked SCC `scc`
/// between `(q1, po)` and `(q1_next, po_next)` on `letter`.
///
/// Evaluated straight from the definition: `q ≺ q'` must hold exactly when
/// some `r` of the next level has a strict down-set that (together with the
/// discharged states outside the SCC) satisfies `q`'s obligation but not
/// `q'`'s.
#[allow(clippy::too_many_arguments)]
pub fn check_preorder_step(
    a: &Awa,
    analysis: &SccAnalysis,
    scc: usize,
    q1: StateSet,
    po: &TotalPreorder,
    q1_next: StateSet,
    po_next: &TotalPreorder,
    letter: usize,
) -> bool {
    let dom = analysis.domain(scc, q1);
    let dom_next = analysis.domain(scc, q1_next);
    if po.domain() != dom || po_next.domain() != dom_next {
        return false;
    }
    let c = analysis.scc(scc);
    let n = a.state_count();
    let (outside, formula): (StateSet, Box<dyn Fn(usize) -> Formula>) = match c.kind {
        SccKind::Rejecting => (
            q1_next.difference(c.states),
            Box::new(|q| a.delta(q, letter).clone()),
        ),
        SccKind::Accepting => (
            q1_next.union(c.states).complement(n),
            Box::new(|q| a.delta(q, letter).dual()),
        ),
        SccKind::Transient => unreachable!(),
    };
    let down_sets: Vec<StateSet> = dom_next
        .iter()
        .map(|r| po_next.strictly_below(r).union(outside))
        .collect();
    for q in dom {
        let fq = formula(q);
        for q2 in dom {
            let fq2 = formula(q2);
            let witnessed = down_sets.iter().any(|s| fq.eval(*s) && !fq2.eval(*s));
            if po.less(q, q2) != witnessed {
                return false;
            }
        }
    }
    true
}
