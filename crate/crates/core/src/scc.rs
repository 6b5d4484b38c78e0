//! SCC decomposition of the underlying graph of an alternating automaton.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::awa::Awa;
use crate::error::WeaknessViolation;
use crate::graph::tarjan_scc;
use crate::set::StateSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SccKind {
    Accepting,
    Rejecting,
    /// A singleton without a self-edge. No run can stay in it.
    Transient,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub states: StateSet,
    pub kind: SccKind,
}

/// Components of the underlying graph and the round-robin order over the
/// non-transient ones.
///
/// `components` lists every component in topological order of the
/// condensation (a component precedes all components it can reach), ties
/// broken by the smallest contained state. The tracked SCCs, indexed
/// `0..len()`, are the non-transient components in that same order; index 0
/// is the initial SCC of the round robin.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SccAnalysis {
    components: Vec<Component>,
    tracked: Vec<usize>,
    tracked_of: Vec<Option<usize>>,
    rejecting: StateSet,
    accepting: StateSet,
}

/// Components in topological order, without classification.
pub(crate) fn raw_components(a: &Awa) -> Vec<StateSet> {
    let n = a.state_count();
    let succ: Vec<StateSet> = (0..n).map(|q| a.successors(q)).collect();
    let comps = tarjan_scc(n, None, |v, out| out.extend(succ[v].iter()));
    let sets: Vec<StateSet> = comps.iter().map(|c| c.iter().copied().collect()).collect();
    let mut comp_of = vec![0usize; n];
    for (i, c) in sets.iter().enumerate() {
        for q in c.iter() {
            comp_of[q] = i;
        }
    }
    // Kahn's algorithm, smallest state first among ready components.
    let k = sets.len();
    let mut indegree = vec![0usize; k];
    let mut edges = vec![Vec::new(); k];
    for q in 0..n {
        for t in succ[q] {
            let (cq, ct) = (comp_of[q], comp_of[t]);
            if cq != ct && !edges[cq].contains(&ct) {
                edges[cq].push(ct);
                indegree[ct] += 1;
            }
        }
    }
    let mut ready: BinaryHeap<Reverse<(usize, usize)>> = (0..k)
        .filter(|&c| indegree[c] == 0)
        .map(|c| Reverse((sets[c].first().unwrap(), c)))
        .collect();
    let mut order = Vec::with_capacity(k);
    while let Some(Reverse((_, c))) = ready.pop() {
        order.push(sets[c]);
        for &d in &edges[c] {
            indegree[d] -= 1;
            if indegree[d] == 0 {
                ready.push(Reverse((sets[d].first().unwrap(), d)));
            }
        }
    }
    order
}

impl SccAnalysis {
    pub fn new(a: &Awa) -> Result<SccAnalysis, WeaknessViolation> {
        let n = a.state_count();
        let f = a.accepting();
        let mut components = Vec::new();
        let mut tracked = Vec::new();
        let mut tracked_of = vec![None; n];
        let mut rejecting = StateSet::EMPTY;
        let mut accepting = StateSet::EMPTY;
        for states in raw_components(a) {
            let q = states.first().unwrap();
            let kind = if states.len() == 1 && !a.successors(q).contains(q) {
                SccKind::Transient
            } else if states.is_subset(f) {
                accepting = accepting.union(states);
                SccKind::Accepting
            } else if states.is_disjoint(f) {
                rejecting = rejecting.union(states);
                SccKind::Rejecting
            } else {
                return Err(WeaknessViolation {
                    component: states,
                    accepting: states.intersection(f).first().unwrap(),
                    rejecting: states.difference(f).first().unwrap(),
                });
            };
            if kind != SccKind::Transient {
                for s in states {
                    tracked_of[s] = Some(tracked.len());
                }
                tracked.push(components.len());
            }
            components.push(Component { states, kind });
        }
        Ok(SccAnalysis {
            components,
            tracked,
            tracked_of,
            rejecting,
            accepting,
        })
    }

    /// Every component, transient ones included, in topological order.
    pub fn components(&self) -> &[Component] {
        &self.components
    }

    /// Number of tracked (non-transient) SCCs.
    pub fn len(&self) -> usize {
        self.tracked.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tracked.is_empty()
    }

    /// The tracked SCC with round-robin index `i`.
    pub fn scc(&self, i: usize) -> &Component {
        &self.components[self.tracked[i]]
    }

    pub fn sccs(&self) -> impl Iterator<Item = &Component> + '_ {
        self.tracked.iter().map(move |&c| &self.components[c])
    }

    /// Round-robin successor.
    pub fn next(&self, i: usize) -> usize {
        (i + 1) % self.tracked.len()
    }

    /// Round-robin index of the tracked SCC containing `q`.
    pub fn scc_of(&self, q: usize) -> Option<usize> {
        self.tracked_of[q]
    }

    /// States of rejecting SCCs (`R`).
    pub fn rejecting(&self) -> StateSet {
        self.rejecting
    }

    /// States of accepting SCCs (`A`).
    pub fn accepting(&self) -> StateSet {
        self.accepting
    }

    /// Size of the largest tracked SCC, 0 when there is none.
    pub fn largest(&self) -> usize {
        self.sccs().map(|c| c.states.len()).max().unwrap_or(0)
    }

    /// The states whose obligations a tracked SCC carries at a level with
    /// accepting-suffix set `q1`: `C ∩ Q1` for rejecting `C`, `C \ Q1` for
    /// accepting `C`.
    pub fn domain(&self, i: usize, q1: StateSet) -> StateSet {
        let c = self.scc(i);
        match c.kind {
            SccKind::Rejecting => c.states.intersection(q1),
            SccKind::Accepting => c.states.difference(q1),
            SccKind::Transient => unreachable!("transient components are not tracked"),
        }
    }
}
