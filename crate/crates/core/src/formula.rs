//! Positive Boolean formulas over alternating-automaton states.

use std::fmt;

use crate::set::StateSet;

/// A positive Boolean formula: states combined with `∧`/`∨`, plus the
/// constants `tt` and `ff`. There is no negation.
///
/// Values built through [`Formula::and`] and [`Formula::or`] are kept in a
/// simplified shape: nested connectives of the same kind are flattened and
/// constants are absorbed, so a formula is either a bare constant or free of
/// constants altogether.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Formula {
    True,
    False,
    State(usize),
    And(Vec<Formula>),
    Or(Vec<Formula>),
}

impl Formula {
    pub fn state(q: usize) -> Formula {
        Formula::State(q)
    }

    pub fn and<I: IntoIterator<Item = Formula>>(children: I) -> Formula {
        let mut out = Vec::new();
        for child in children {
            match child {
                Formula::True => {}
                Formula::False => return Formula::False,
                Formula::And(grand) => out.extend(grand),
                other => out.push(other),
            }
        }
        match out.len() {
            0 => Formula::True,
            1 => out.pop().unwrap(),
            _ => Formula::And(out),
        }
    }

    pub fn or<I: IntoIterator<Item = Formula>>(children: I) -> Formula {
        let mut out = Vec::new();
        for child in children {
            match child {
                Formula::False => {}
                Formula::True => return Formula::True,
                Formula::Or(grand) => out.extend(grand),
                other => out.push(other),
            }
        }
        match out.len() {
            0 => Formula::False,
            1 => out.pop().unwrap(),
            _ => Formula::Or(out),
        }
    }

    /// Re-applies the smart constructors bottom-up.
    pub fn simplified(&self) -> Formula {
        match self {
            Formula::And(cs) => Formula::and(cs.iter().map(Formula::simplified)),
            Formula::Or(cs) => Formula::or(cs.iter().map(Formula::simplified)),
            other => other.clone(),
        }
    }

    /// `Y ⊨ f`: assign true to the members of `assignment`, false elsewhere.
    pub fn eval(&self, assignment: StateSet) -> bool {
        match self {
            Formula::True => true,
            Formula::False => false,
            Formula::State(q) => assignment.contains(*q),
            Formula::And(cs) => cs.iter().all(|c| c.eval(assignment)),
            Formula::Or(cs) => cs.iter().any(|c| c.eval(assignment)),
        }
    }

    /// States occurring syntactically in the formula.
    pub fn states(&self) -> StateSet {
        let mut acc = StateSet::EMPTY;
        self.collect_states(&mut acc);
        acc
    }

    fn collect_states(&self, acc: &mut StateSet) {
        match self {
            Formula::State(q) => acc.insert(*q),
            Formula::And(cs) | Formula::Or(cs) => cs.iter().for_each(|c| c.collect_states(acc)),
            _ => {}
        }
    }

    /// Swaps `tt`/`ff` and `∧`/`∨`.
    pub fn dual(&self) -> Formula {
        match self {
            Formula::True => Formula::False,
            Formula::False => Formula::True,
            Formula::State(q) => Formula::State(*q),
            Formula::And(cs) => Formula::Or(cs.iter().map(Formula::dual).collect()),
            Formula::Or(cs) => Formula::And(cs.iter().map(Formula::dual).collect()),
        }
    }

    pub fn is_constant(&self) -> bool {
        matches!(self, Formula::True | Formula::False)
    }

    /// Renames every state through `map`.
    pub fn map_states(&self, map: &impl Fn(usize) -> usize) -> Formula {
        match self {
            Formula::State(q) => Formula::State(map(*q)),
            Formula::And(cs) => Formula::And(cs.iter().map(|c| c.map_states(map)).collect()),
            Formula::Or(cs) => Formula::Or(cs.iter().map(|c| c.map_states(map)).collect()),
            other => other.clone(),
        }
    }

    /// All ⊆-minimal `Y ⊆ universe` with `Y ⊨ self`, in ascending order.
    /// Empty iff no subset of `universe` satisfies the formula.
    pub fn minimal_models(&self, universe: StateSet) -> Vec<StateSet> {
        let mut models = match self {
            Formula::True => vec![StateSet::EMPTY],
            Formula::False => Vec::new(),
            Formula::State(q) => {
                if universe.contains(*q) {
                    vec![StateSet::singleton(*q)]
                } else {
                    Vec::new()
                }
            }
            Formula::Or(cs) => {
                let all: Vec<StateSet> =
                    cs.iter().flat_map(|c| c.minimal_models(universe)).collect();
                minimize(all)
            }
            Formula::And(cs) => {
                let mut acc = vec![StateSet::EMPTY];
                for c in cs {
                    let part = c.minimal_models(universe);
                    let mut next = Vec::with_capacity(acc.len() * part.len());
                    for a in &acc {
                        for p in &part {
                            next.push(a.union(*p));
                        }
                    }
                    acc = minimize(next);
                    if acc.is_empty() {
                        break;
                    }
                }
                acc
            }
        };
        models.sort();
        models
    }
}

fn minimize(mut sets: Vec<StateSet>) -> Vec<StateSet> {
    sets.sort_by_key(|s| (s.len(), *s));
    sets.dedup();
    let mut kept: Vec<StateSet> = Vec::with_capacity(sets.len());
    for s in sets {
        if !kept.iter().any(|k| k.is_subset(s)) {
            kept.push(s);
        }
    }
    kept
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::True => f.write_str("true"),
            Formula::False => f.write_str("false"),
            Formula::State(q) => write!(f, "{q}"),
            Formula::Or(cs) => {
                for (i, c) in cs.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" | ")?;
                    }
                    write!(f, "{c}")?;
                }
                Ok(())
            }
            Formula::And(cs) => {
                for (i, c) in cs.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" & ")?;
                    }
                    if matches!(c, Formula::Or(_)) {
                        write!(f, "({c})")?;
                    } else {
                        write!(f, "{c}")?;
                    }
                }
                Ok(())
            }
        }
    }
}
