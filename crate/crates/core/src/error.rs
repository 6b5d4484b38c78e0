use thiserror::Error;

use crate::set::StateSet;

/// Malformed automaton data.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AutomatonError {
    #[error("alphabet is empty")]
    EmptyAlphabet,
    #[error("duplicate letter `{0}`")]
    DuplicateLetter(String),
    #[error("automaton has no states")]
    NoStates,
    #[error("{0} states requested, at most {max} are supported", max = crate::set::MAX_STATES)]
    TooManyStates(usize),
    #[error("state {state} out of range, automaton has {count} states")]
    StateOutOfRange { state: usize, count: usize },
    #[error("transition table must have one formula per state and letter")]
    TransitionShape,
}

/// An SCC that contains both accepting and rejecting states.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("not weak: component {component} mixes accepting state {accepting} with rejecting state {rejecting}")]
pub struct WeaknessViolation {
    pub component: StateSet,
    pub accepting: usize,
    pub rejecting: usize,
}

/// Failures of the automaton constructions.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error(transparent)]
    NotWeak(#[from] WeaknessViolation),
    #[error("safety fallback requires an automaton without non-trivial SCCs, found {0}")]
    HasSccs(usize),
    #[error("construction needs at least one non-trivial SCC; use the safety fallback")]
    NoSccs,
    #[error("construction exceeded the limit of {0} macrostates")]
    TooLarge(usize),
}
