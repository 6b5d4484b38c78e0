use std::collections::BTreeSet;
use std::fmt;

use crate::awa::Awa;
use crate::error::ConstructionError;
use crate::formula::Formula;
use crate::nba::{explore, Nba, DEFAULT_STATE_LIMIT};
use crate::set::StateSet;

/// Breakpoint macrostate: reached set `S` and pending obligations
/// `O ⊆ S \ F`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MhState {
    pub reach: StateSet,
    pub obligation: StateSet,
}

impl fmt::Display for MhState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}|{})", self.reach, self.obligation)
    }
}

/// How successor sets are chosen.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MhSuccessors {
    /// Every satisfying subset, as in the textbook definition.
    All,
    /// Each state picks one ⊆-minimal model of its own transition; same
    /// language, fewer states.
    Minimal,
}

pub fn miyano_hayashi(a: &Awa) -> Result<Nba<MhState>, ConstructionError> {
    miyano_hayashi_limited(a, MhSuccessors::All, DEFAULT_STATE_LIMIT)
}

pub fn miyano_hayashi_limited(
    a: &Awa,
    mode: MhSuccessors,
    limit: usize,
) -> Result<Nba<MhState>, ConstructionError> {
    a.validate_weak()?;
    let f = a.accepting();
    let all = a.states();
    let conj =
        |set: StateSet, letter: usize| Formula::and(set.iter().map(|s| a.delta(s, letter).clone()));
    let init = MhState {
        reach: StateSet::singleton(a.initial()),
        obligation: StateSet::singleton(a.initial()).difference(f),
    };
    explore(
        a.alphabet(),
        vec![init],
        |p| p.obligation.is_empty(),
        |p, letter, out| match mode {
            MhSuccessors::All => {
                let obl_f = conj(p.obligation, letter);
                for next in all.subsets().filter(|&y| conj(p.reach, letter).eval(y)) {
                    if p.obligation.is_empty() {
                        out.push(MhState {
                            reach: next,
                            obligation: next.difference(f),
                        });
                        continue;
                    }
                    let options: BTreeSet<StateSet> = next
                        .subsets()
                        .filter(|&y| obl_f.eval(y))
                        .map(|y| y.difference(f))
                        .collect();
                    out.extend(options.into_iter().map(|o| MhState {
                        reach: next,
                        obligation: o,
                    }));
                }
            }
            MhSuccessors::Minimal => {
                // one minimal model per state; obligations follow the
                // choices made for their own states
                let mut partial = vec![(StateSet::EMPTY, StateSet::EMPTY)];
                for q in p.reach {
                    let models = a.delta(q, letter).minimal_models(all);
                    let tracked = p.obligation.contains(q);
                    partial = partial
                        .iter()
                        .flat_map(|&(r, o)| {
                            models
                                .iter()
                                .map(move |&y| (r.union(y), if tracked { o.union(y) } else { o }))
                        })
                        .collect::<BTreeSet<_>>()
                        .into_iter()
                        .collect();
                }
                for (reach, o) in partial {
                    let source = if p.obligation.is_empty() { reach } else { o };
                    out.push(MhState {
                        reach,
                        obligation: source.difference(f),
                    });
                }
            }
        },
        limit,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::awa::fixtures::t1;

    #[test]
    fn accepting_sink_gives_single_accepting_state() {
        let a = Awa::new(
            vec!["a".into()],
            0,
            StateSet::singleton(0),
            vec![vec![Formula::state(0)]],
        )
        .unwrap();
        let b = miyano_hayashi(&a).unwrap();
        // ({0},∅) and the vacuous (∅,∅)
        let top = MhState {
            reach: StateSet::singleton(0),
            obligation: StateSet::EMPTY,
        };
        assert_eq!(b.payload(0), &top);
        assert!(b.is_accepting(0));
        assert!(b.successors(0, 0).contains(&0));
        let m = miyano_hayashi_limited(&a, MhSuccessors::Minimal, 10).unwrap();
        assert_eq!(m.state_count(), 1);
    }

    #[test]
    fn rejecting_sink_never_accepts() {
        let a = Awa::new(
            vec!["a".into()],
            0,
            StateSet::EMPTY,
            vec![vec![Formula::state(0)]],
        )
        .unwrap();
        let b = miyano_hayashi_limited(&a, MhSuccessors::Minimal, 10).unwrap();
        assert_eq!(b.state_count(), 1);
        assert!(!b.is_accepting(0));
        assert_eq!(b.successors(0, 0), &[0]);
    }

    #[test]
    fn t1_initial_state() {
        let b = miyano_hayashi(&t1()).unwrap();
        assert_eq!(b.initial(), &[0]);
        assert_eq!(b.payload(0).to_string(), "({0}|{0})");
    }
}
