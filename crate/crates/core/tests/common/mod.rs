//! Brute-force oracles shared by the integration tests. They only use the
//! automaton's transition formulas and `Formula::eval`.

#![allow(dead_code)]

use std::collections::HashMap;

use uba_core::harness::{corpus_params, random_weak_awa};
use uba_core::semantics::SetProfile;
use uba_core::{Awa, LassoWord, StateSet};

/// The `index`-th automaton of the corpus generated from `seed`.
pub fn corpus(seed: u64, count: usize, max_states: usize) -> Vec<Awa> {
    (0..count)
        .map(|i| random_weak_awa(&corpus_params(seed, i, max_states, 2)).unwrap())
        .collect()
}

/// Accepting-suffix sets per lasso position via the Büchi game fixpoint
/// `νZ. μY. (F ∩ Pre(Z)) ∪ Pre(Y)` over (state, position) pairs. Needs no
/// SCC information, so it also serves as an oracle for weak automata.
pub fn buchi_game_suffix_sets(a: &Awa, w: &LassoWord) -> Vec<StateSet> {
    let len = w.len();
    let n = a.state_count();
    let pre = |s: &[StateSet], q: usize, i: usize| a.delta(q, w.letter(i)).eval(s[w.succ(i)]);
    let mut z = vec![StateSet::full(n); len];
    loop {
        let mut y = vec![StateSet::EMPTY; len];
        loop {
            let next: Vec<StateSet> = (0..len)
                .map(|i| {
                    (0..n)
                        .filter(|&q| (a.accepting().contains(q) && pre(&z, q, i)) || pre(&y, q, i))
                        .collect()
                })
                .collect();
            if next == y {
                break;
            }
            y = next;
        }
        if y == z {
            return z;
        }
        z = y;
    }
}

/// Brute-force distance of `q` at position `i`: the least `k ≤ depth` such
/// that some run DAG from `(q, i)` leaves `q`'s SCC on every branch within
/// `k` steps and lands in states accepting their suffix. For accepting SCCs
/// the same is asked of the dual automaton, whose successor sets are the
/// `Y` with `Q \ Y ⊭ δ(q, σ)`.
pub struct RunDagOracle<'a> {
    a: &'a Awa,
    w: &'a LassoWord,
    rw: &'a SetProfile,
    scc: Vec<StateSet>,
    memo: HashMap<(usize, usize, u32), bool>,
}

impl<'a> RunDagOracle<'a> {
    pub fn new(a: &'a Awa, w: &'a LassoWord, rw: &'a SetProfile) -> Self {
        let n = a.state_count();
        // mutual reachability from the formula graph
        let mut reach = vec![StateSet::EMPTY; n];
        for (q, r) in reach.iter_mut().enumerate() {
            let mut frontier = vec![q];
            while let Some(p) = frontier.pop() {
                for l in 0..a.letter_count() {
                    for s in a.delta(p, l).states() {
                        if !r.contains(s) {
                            r.insert(s);
                            frontier.push(s);
                        }
                    }
                }
            }
        }
        let scc = (0..n)
            .map(|q| {
                (0..n)
                    .filter(|&p| reach[q].contains(p) && reach[p].contains(q))
                    .collect()
            })
            .collect();
        RunDagOracle {
            a,
            w,
            rw,
            scc,
            memo: HashMap::new(),
        }
    }

    fn dual_side(&self, q: usize) -> bool {
        self.a.accepting().contains(q)
    }

    fn successor_ok(&self, q: usize, y: StateSet, letter: usize) -> bool {
        let f = self.a.delta(q, letter);
        if self.dual_side(q) {
            !f.eval(y.complement(self.a.state_count()))
        } else {
            f.eval(y)
        }
    }

    fn exits_within(&mut self, q: usize, i: usize, k: u32) -> bool {
        if k == 0 {
            return false;
        }
        if let Some(&v) = self.memo.get(&(q, i, k)) {
            return v;
        }
        let n = self.a.state_count();
        let j = self.w.succ(i);
        let next_q1 = *self.rw.get(j);
        let letter = self.w.letter(i);
        let comp = self.scc[q];
        let dual = self.dual_side(q);
        let mut found = false;
        for y in StateSet::full(n).subsets() {
            if !self.successor_ok(q, y, letter) {
                continue;
            }
            let ok = y.iter().all(|s| {
                if comp.contains(s) {
                    self.exits_within(s, j, k - 1)
                } else {
                    next_q1.contains(s) != dual
                }
            });
            if ok {
                found = true;
                break;
            }
        }
        self.memo.insert((q, i, k), found);
        found
    }

    pub fn distance(&mut self, q: usize, i: usize, depth: u32) -> Option<u32> {
        (1..=depth).find(|&k| self.exits_within(q, i, k))
    }
}
