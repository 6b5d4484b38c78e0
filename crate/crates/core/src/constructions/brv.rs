use std::collections::{BTreeSet, HashMap};
use std::fmt;

use crate::awa::Awa;
use crate::error::ConstructionError;
use crate::formula::Formula;
use crate::nba::{explore, Nba, DEFAULT_STATE_LIMIT};
use crate::set::StateSet;

use super::Analyzed;

/// Consistent tuple `(Q1, Q2, Q3, Q4)`: `Q2 = Q \ Q1`, `Q3 ⊆ Q1 \ F`,
/// `Q4 ⊆ Q2 \ F̂`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BrvState {
    pub q1: StateSet,
    pub q2: StateSet,
    pub q3: StateSet,
    pub q4: StateSet,
}

impl fmt::Display for BrvState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}|{}|{}|{})", self.q1, self.q2, self.q3, self.q4)
    }
}

pub fn brv_construct(a: &Awa) -> Result<Nba<BrvState>, ConstructionError> {
    brv_construct_limited(a, DEFAULT_STATE_LIMIT)
}

pub fn brv_construct_limited(a: &Awa, limit: usize) -> Result<Nba<BrvState>, ConstructionError> {
    let ctx = Analyzed::new(a)?;
    let n = a.state_count();
    let f = a.accepting();
    // F̂ = Q \ F, so Q2 \ F̂ = Q2 ∩ F
    let mut initials = Vec::new();
    for q1 in a.states().subsets().filter(|s| s.contains(a.initial())) {
        let q2 = q1.complement(n);
        for q3 in q1.difference(f).subsets() {
            for q4 in q2.intersection(f).subsets() {
                initials.push(BrvState { q1, q2, q3, q4 });
            }
        }
    }
    let mut local: HashMap<(StateSet, usize), Vec<StateSet>> = HashMap::new();
    explore(
        a.alphabet(),
        initials,
        |p| p.q3.is_empty() && p.q4.is_empty(),
        |p, letter, out| {
            let nexts = local
                .entry((p.q1, letter))
                .or_insert_with(|| ctx.local_successors(p.q1, letter));
            let g3 = Formula::and(p.q3.iter().map(|s| a.delta(s, letter).clone()));
            let g4 = Formula::and(p.q4.iter().map(|s| ctx.dual().delta(s, letter).clone()));
            for &q1 in nexts.iter() {
                let q2 = q1.complement(n);
                if p.q3.is_empty() && p.q4.is_empty() {
                    out.push(BrvState {
                        q1,
                        q2,
                        q3: q1.difference(f),
                        q4: q2.intersection(f),
                    });
                    continue;
                }
                let threes: BTreeSet<StateSet> = q1
                    .subsets()
                    .filter(|&y| g3.eval(y))
                    .map(|y| y.difference(f))
                    .collect();
                let fours: BTreeSet<StateSet> = q2
                    .subsets()
                    .filter(|&y| g4.eval(y))
                    .map(|y| y.intersection(f))
                    .collect();
                for &q3 in &threes {
                    for &q4 in &fours {
                        out.push(BrvState { q1, q2, q3, q4 });
                    }
                }
            }
        },
        limit,
    )
}
