//! Alternating weak Büchi automata: the data model, completion and
//! dualization.

use std::collections::HashSet;

use crate::error::{AutomatonError, WeaknessViolation};
use crate::formula::Formula;
use crate::scc::{self, SccAnalysis};
use crate::set::{StateSet, MAX_STATES};

/// An alternating Büchi automaton over states `0..n` and letters `0..|Σ|`.
///
/// The transition table is total: every state has one formula per letter.
/// Formulas may still be the constants `tt`/`ff`; [`Awa::complete`] turns
/// those into explicit sink states. Weakness is not enforced here; the
/// constructions check it through [`Awa::validate_weak`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Awa {
    alphabet: Vec<String>,
    initial: usize,
    accepting: StateSet,
    delta: Vec<Vec<Formula>>,
}

impl Awa {
    /// `delta[q][a]` is the transition formula of state `q` on letter `a`.
    pub fn new(
        alphabet: Vec<String>,
        initial: usize,
        accepting: StateSet,
        delta: Vec<Vec<Formula>>,
    ) -> Result<Awa, AutomatonError> {
        if alphabet.is_empty() {
            return Err(AutomatonError::EmptyAlphabet);
        }
        let mut seen = HashSet::new();
        for letter in &alphabet {
            if !seen.insert(letter.as_str()) {
                return Err(AutomatonError::DuplicateLetter(letter.clone()));
            }
        }
        let n = delta.len();
        if n == 0 {
            return Err(AutomatonError::NoStates);
        }
        if n > MAX_STATES {
            return Err(AutomatonError::TooManyStates(n));
        }
        let check = |q: usize| {
            if q < n {
                Ok(())
            } else {
                Err(AutomatonError::StateOutOfRange { state: q, count: n })
            }
        };
        check(initial)?;
        for q in accepting {
            check(q)?;
        }
        for row in &delta {
            if row.len() != alphabet.len() {
                return Err(AutomatonError::TransitionShape);
            }
            for f in row {
                for q in f.states() {
                    check(q)?;
                }
            }
        }
        let delta = delta
            .into_iter()
            .map(|row| row.iter().map(Formula::simplified).collect())
            .collect();
        Ok(Awa {
            alphabet,
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
        self.delta.len()
    }

    pub fn states(&self) -> StateSet {
        StateSet::full(self.state_count())
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn accepting(&self) -> StateSet {
        self.accepting
    }

    pub fn delta(&self, q: usize, letter: usize) -> &Formula {
        &self.delta[q][letter]
    }

    pub fn rows(&self) -> &[Vec<Formula>] {
        &self.delta
    }

    /// The same automaton started from `q`.
    pub fn with_initial(&self, q: usize) -> Awa {
        assert!(q < self.state_count());
        Awa {
            initial: q,
            ..self.clone()
        }
    }

    /// Successors of `q` in the underlying graph: states occurring in some
    /// `δ(q, σ)`.
    pub fn successors(&self, q: usize) -> StateSet {
        self.delta[q]
            .iter()
            .fold(StateSet::EMPTY, |acc, f| acc.union(f.states()))
    }

    /// True when no transition formula is a bare constant.
    pub fn is_complete(&self) -> bool {
        self.delta.iter().flatten().all(|f| !f.is_constant())
    }

    /// Replaces `tt` transitions by an accepting sink `⊤` and `ff`
    /// transitions by a rejecting sink `⊥`. Sinks are appended after the
    /// existing states (`⊤` first). Complete automata are returned unchanged.
    pub fn complete(&self) -> Awa {
        let any = |c: &Formula| self.delta.iter().flatten().any(|f| f == c);
        let need_top = any(&Formula::True);
        let need_bot = any(&Formula::False);
        if !need_top && !need_bot {
            return self.clone();
        }
        let n = self.state_count();
        let top = need_top.then_some(n);
        let bot = need_bot.then(|| n + usize::from(need_top));
        let mut delta: Vec<Vec<Formula>> = self
            .delta
            .iter()
            .map(|row| {
                row.iter()
                    .map(|f| match f {
                        Formula::True => Formula::State(top.unwrap()),
                        Formula::False => Formula::State(bot.unwrap()),
                        other => other.clone(),
                    })
                    .collect()
            })
            .collect();
        let mut accepting = self.accepting;
        if let Some(t) = top {
            delta.push(vec![Formula::State(t); self.letter_count()]);
            accepting.insert(t);
        }
        if let Some(b) = bot {
            delta.push(vec![Formula::State(b); self.letter_count()]);
        }
        Awa {
            alphabet: self.alphabet.clone(),
            initial: self.initial,
            accepting,
            delta,
        }
    }

    /// The dual automaton: `∧`/`∨` and `tt`/`ff` exchanged, accepting set
    /// complemented. It recognizes the complement language from every state.
    pub fn dualize(&self) -> Awa {
        Awa {
            alphabet: self.alphabet.clone(),
            initial: self.initial,
            accepting: self.accepting.complement(self.state_count()),
            delta: self
                .delta
                .iter()
                .map(|row| row.iter().map(Formula::dual).collect())
                .collect(),
        }
    }

    /// Checks that every SCC is entirely accepting or entirely rejecting.
    pub fn validate_weak(&self) -> Result<(), WeaknessViolation> {
        for comp in scc::raw_components(self) {
            let acc = comp.intersection(self.accepting);
            let rej = comp.difference(self.accepting);
            if let (Some(a), Some(r)) = (acc.first(), rej.first()) {
                return Err(WeaknessViolation {
                    component: comp,
                    accepting: a,
                    rejecting: r,
                });
            }
        }
        Ok(())
    }

    /// SCC decomposition with the fixed round-robin order.
    pub fn scc_analysis(&self) -> Result<SccAnalysis, WeaknessViolation> {
        SccAnalysis::new(self)
    }

    /// Applies a state permutation: state `q` becomes `perm[q]`.
    pub fn permuted(&self, perm: &[usize]) -> Awa {
        let n = self.state_count();
        assert_eq!(perm.len(), n);
        let mut delta = vec![Vec::new(); n];
        for (q, row) in self.delta.iter().enumerate() {
            delta[perm[q]] = row.iter().map(|f| f.map_states(&|s| perm[s])).collect();
        }
        Awa {
            alphabet: self.alphabet.clone(),
            initial: perm[self.initial],
            accepting: self.accepting.iter().map(|q| perm[q]).collect(),
            delta,
        }
    }
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;

    /// Σ={a,b}, Q={x=0,y=1}, ι=x, F={y};
    /// δ(x,a)=x∧y, δ(x,b)=y, δ(y,·)=y.
    pub fn t1() -> Awa {
        let x = Formula::state(0);
        let y = Formula::state(1);
        Awa::new(
            vec!["a".into(), "b".into()],
            0,
            StateSet::singleton(1),
            vec![
                vec![Formula::and([x, y.clone()]), y.clone()],
                vec![y.clone(), y],
            ],
        )
        .unwrap()
    }
}
