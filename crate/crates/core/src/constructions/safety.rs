use std::fmt;

use crate::awa::Awa;
use crate::error::ConstructionError;
use crate::nba::{explore, Nba, DEFAULT_STATE_LIMIT};
use crate::set::StateSet;

use super::Analyzed;

/// A guess `(Q1, Q \ Q1)` of the accepting-suffix set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SafetyState {
    pub q1: StateSet,
    pub q2: StateSet,
}

impl fmt::Display for SafetyState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}|{})", self.q1, self.q2)
    }
}

/// Guesses the accepting-suffix sets under local consistency alone; every
/// state is accepting. Only sound when no run can stay inside a cycle,
/// hence refused for automata with a non-trivial SCC.
pub fn safety_fallback(a: &Awa) -> Result<Nba<SafetyState>, ConstructionError> {
    let ctx = Analyzed::new(a)?;
    if !ctx.sccs().is_empty() {
        return Err(ConstructionError::HasSccs(ctx.sccs().len()));
    }
    let n = a.state_count();
    let state = |q1: StateSet| SafetyState {
        q1,
        q2: q1.complement(n),
    };
    let initials = a
        .states()
        .subsets()
        .filter(|s| s.contains(a.initial()))
        .map(state)
        .collect();
    explore(
        a.alphabet(),
        initials,
        |_| true,
        |p, letter, out| out.extend(ctx.local_successors(p.q1, letter).into_iter().map(state)),
        DEFAULT_STATE_LIMIT,
    )
}
