//! Nondeterministic Büchi automata with opaque macrostate payloads.

use std::collections::hash_map::Entry;
use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::hash::Hash;

use crate::error::ConstructionError;
use crate::graph::tarjan_scc;

/// Default cap on the number of macrostates a construction may emit.
pub const DEFAULT_STATE_LIMIT: usize = 2_000_000;

/// A state-based Büchi automaton with several initial states. State `i`
/// carries `payload(i)`; payloads identify states structurally.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Nba<P> {
    alphabet: Vec<String>,
    states: Vec<P>,
    initial: Vec<usize>,
    accepting: Vec<bool>,
    delta: Vec<Vec<Vec<usize>>>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum NbaError {
    #[error("state {0} out of range")]
    StateOutOfRange(usize),
    #[error("transition table has the wrong shape")]
    Shape,
}

impl<P> Nba<P> {
    /// `delta[s][letter]` lists the successors of `s`; lists are sorted and
    /// deduplicated here.
    pub fn new(
        alphabet: Vec<String>,
        states: Vec<P>,
        initial: Vec<usize>,
        accepting: Vec<bool>,
        mut delta: Vec<Vec<Vec<usize>>>,
    ) -> Result<Nba<P>, NbaError> {
        let n = states.len();
        if accepting.len() != n || delta.len() != n {
            return Err(NbaError::Shape);
        }
        let mut initial = initial;
        initial.sort_unstable();
        initial.dedup();
        if let Some(&s) = initial.iter().find(|&&s| s >= n) {
            return Err(NbaError::StateOutOfRange(s));
        }
        for row in &mut delta {
            if row.len() != alphabet.len() {
                return Err(NbaError::Shape);
            }
            for targets in row.iter_mut() {
                targets.sort_unstable();
                targets.dedup();
                if let Some(&t) = targets.iter().find(|&&t| t >= n) {
                    return Err(NbaError::StateOutOfRange(t));
                }
            }
        }
        Ok(Nba {
            alphabet,
            states,
            initial,
            accepting,
            delta,
        })
    }

    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
    }

    pub fn letter_count(&self) -> usize {
        self.alphabet.len()
    }

    pub fn state_count(&self) -> usize {
        self.states.len()
    }

    pub fn payload(&self, s: usize) -> &P {
        &self.states[s]
    }

    pub fn payloads(&self) -> &[P] {
        &self.states
    }

    pub fn initial(&self) -> &[usize] {
        &self.initial
    }

    pub fn is_accepting(&self, s: usize) -> bool {
        self.accepting[s]
    }

    pub fn accepting_count(&self) -> usize {
        self.accepting.iter().filter(|&&b| b).count()
    }

    pub fn successors(&self, s: usize, letter: usize) -> &[usize] {
        &self.delta[s][letter]
    }

    pub fn transition_count(&self) -> usize {
        self.delta.iter().flatten().map(Vec::len).sum()
    }

    /// Every `(source, letter, target)` triple.
    pub fn transitions(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        self.delta.iter().enumerate().flat_map(|(s, row)| {
            row.iter()
                .enumerate()
                .flat_map(move |(l, ts)| ts.iter().map(move |&t| (s, l, t)))
        })
    }

    pub fn is_deterministic(&self) -> bool {
        self.initial.len() <= 1 && self.delta.iter().flatten().all(|ts| ts.len() <= 1)
    }

    pub fn map_payload<Q>(&self, f: impl Fn(&P) -> Q) -> Nba<Q> {
        Nba {
            alphabet: self.alphabet.clone(),
            states: self.states.iter().map(f).collect(),
            initial: self.initial.clone(),
            accepting: self.accepting.clone(),
            delta: self.delta.clone(),
        }
    }

    /// States reachable from the initial states that can also reach an
    /// accepting cycle, i.e. states with a nonempty language that occur in
    /// some run.
    pub fn useful_states(&self) -> Vec<bool> {
        let n = self.state_count();
        let mut reach = vec![false; n];
        let mut queue: VecDeque<usize> = self.initial.iter().copied().collect();
        for &s in &self.initial {
            reach[s] = true;
        }
        while let Some(s) = queue.pop_front() {
            for ts in &self.delta[s] {
                for &t in ts {
                    if !reach[t] {
                        reach[t] = true;
                        queue.push_back(t);
                    }
                }
            }
        }
        let mut good = vec![false; n];
        let comps = tarjan_scc(n, None, |v, out| {
            for ts in &self.delta[v] {
                out.extend(ts.iter().copied());
            }
        });
        for comp in &comps {
            let nontrivial =
                comp.len() > 1 || self.delta[comp[0]].iter().any(|ts| ts.contains(&comp[0]));
            if nontrivial && comp.iter().any(|&s| self.accepting[s]) {
                for &s in comp {
                    good[s] = true;
                }
            }
        }
        // Components come sinks first, so one pass propagates backwards.
        for comp in &comps {
            if comp.iter().any(|&s| good[s]) {
                continue;
            }
            let hits = comp
                .iter()
                .any(|&s| self.delta[s].iter().flatten().any(|&t| good[t]));
            if hits {
                for &s in comp {
                    good[s] = true;
                }
            }
        }
        (0..n).map(|s| reach[s] && good[s]).collect()
    }
}

impl<P: Clone> Nba<P> {
    /// The sub-automaton on states where `keep` holds, renumbered in order.
    pub fn restrict(&self, keep: &[bool]) -> Nba<P> {
        let mut index = vec![usize::MAX; self.state_count()];
        let mut next = 0;
        for (s, &k) in keep.iter().enumerate() {
            if k {
                index[s] = next;
                next += 1;
            }
        }
        let kept = |s: usize| keep[s];
        Nba {
            alphabet: self.alphabet.clone(),
            states: (0..self.state_count())
                .filter(|&s| kept(s))
                .map(|s| self.states[s].clone())
                .collect(),
            initial: self
                .initial
                .iter()
                .filter(|&&s| kept(s))
                .map(|&s| index[s])
                .collect(),
            accepting: (0..self.state_count())
                .filter(|&s| kept(s))
                .map(|s| self.accepting[s])
                .collect(),
            delta: (0..self.state_count())
                .filter(|&s| kept(s))
                .map(|s| {
                    self.delta[s]
                        .iter()
                        .map(|ts| ts.iter().filter(|&&t| kept(t)).map(|&t| index[t]).collect())
                        .collect()
                })
                .collect(),
        }
    }

    /// Keeps only useful states; the language is unchanged.
    pub fn trim(&self) -> Nba<P> {
        self.restrict(&self.useful_states())
    }

    /// Deletes state `s` with all its transitions.
    pub fn without_state(&self, s: usize) -> Nba<P> {
        let mut keep = vec![true; self.state_count()];
        keep[s] = false;
        self.restrict(&keep)
    }

    pub fn with_accepting(&self, s: usize, accepting: bool) -> Nba<P> {
        let mut out = self.clone();
        out.accepting[s] = accepting;
        out
    }

    /// Replaces the target `from` of transition `(s, letter)` by `to`.
    pub fn with_redirect(&self, s: usize, letter: usize, from: usize, to: usize) -> Nba<P> {
        let mut out = self.clone();
        let ts = &mut out.delta[s][letter];
        ts.retain(|&t| t != from);
        ts.push(to);
        ts.sort_unstable();
        ts.dedup();
        out
    }
}

impl<P: fmt::Display> Nba<P> {
    /// Human-readable listing of all states and transitions.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for s in 0..self.state_count() {
            let init = if self.initial.contains(&s) { ">" } else { " " };
            let acc = if self.accepting[s] { "*" } else { " " };
            out.push_str(&format!("{init}{acc}{s} {}\n", self.states[s]));
            for (l, ts) in self.delta[s].iter().enumerate() {
                if !ts.is_empty() {
                    let ts: Vec<String> = ts.iter().map(usize::to_string).collect();
                    out.push_str(&format!("    {} -> {}\n", self.alphabet[l], ts.join(" ")));
                }
            }
        }
        out
    }
}

/// Worklist exploration of the macrostates reachable from `initials`.
///
/// `succ(p, letter, out)` pushes the successor payloads of `p`; duplicates
/// are fine. State numbers follow discovery order, so the result is
/// deterministic whenever `succ` is.
pub fn explore<P, S>(
    alphabet: &[String],
    initials: Vec<P>,
    accepting: impl Fn(&P) -> bool,
    mut succ: S,
    limit: usize,
) -> Result<Nba<P>, ConstructionError>
where
    P: Clone + Eq + Hash,
    S: FnMut(&P, usize, &mut Vec<P>),
{
    let mut index: HashMap<P, usize> = HashMap::new();
    let mut states: Vec<P> = Vec::new();
    let mut intern = |p: P, states: &mut Vec<P>| -> Result<usize, ConstructionError> {
        match index.entry(p) {
            Entry::Occupied(e) => Ok(*e.get()),
            Entry::Vacant(e) => {
                if states.len() >= limit {
                    return Err(ConstructionError::TooLarge(limit));
                }
                states.push(e.key().clone());
                Ok(*e.insert(states.len() - 1))
            }
        }
    };
    let mut initial = Vec::new();
    for p in initials {
        initial.push(intern(p, &mut states)?);
    }
    let letters = alphabet.len();
    let mut delta: Vec<Vec<Vec<usize>>> = Vec::new();
    let mut buf = Vec::new();
    let mut next = 0;
    while next < states.len() {
        let p = states[next].clone();
        let mut row = Vec::with_capacity(letters);
        for l in 0..letters {
            buf.clear();
            succ(&p, l, &mut buf);
            let mut targets = Vec::with_capacity(buf.len());
            for q in buf.drain(..) {
                targets.push(intern(q, &mut states)?);
            }
            targets.sort_unstable();
            targets.dedup();
            row.push(targets);
        }
        delta.push(row);
        next += 1;
    }
    let acc = states.iter().map(&accepting).collect();
    initial.sort_unstable();
    initial.dedup();
    Ok(Nba {
        alphabet: alphabet.to_vec(),
        states,
        initial,
        accepting: acc,
        delta,
    })
}
