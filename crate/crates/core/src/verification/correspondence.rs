//! Checks relating accepting macroruns of `U` and `B_u` to the distance
//! functions of the word, and a rule-by-rule audit of `U` transitions.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::awa::Awa;
use crate::constructions::{BuState, UState};
use crate::formula::Formula;
use crate::lasso::LassoWord;
use crate::nba::Nba;
use crate::preorder::TotalPreorder;
use crate::scc::{SccAnalysis, SccKind};
use crate::semantics::{check_local_consistency, check_preorder_step, DistanceProfile, SetProfile};
use crate::set::StateSet;

use super::runs::{lcm, Macrorun};

/// First failed item of the distance/preorder correspondence. Item 0
/// means the run's `Q1` component is not the accepting-suffix set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorrespondenceViolation {
    pub time: usize,
    pub item: u8,
    pub detail: String,
}

impl fmt::Display for CorrespondenceViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "item ({}) fails at time {}: {}",
            self.item, self.time, self.detail
        )
    }
}

fn violation(time: usize, item: u8, detail: String) -> Result<(), CorrespondenceViolation> {
    Err(CorrespondenceViolation { time, item, detail })
}

/// Times `0..=T` where `T` covers the stem plus two joint periods of run
/// and word, so every repeating segment is seen whole.
fn horizon(run: &Macrorun, w: &LassoWord) -> usize {
    run.stem.len().max(w.prefix().len()) + 2 * lcm(run.cycle.len(), w.period().len())
}

fn sup(d: &std::collections::BTreeMap<usize, u32>, set: StateSet) -> Option<u32> {
    set.iter()
        .map(|q| d.get(&q).copied())
        .try_fold(0, |m, v| v.map(|v| m.max(v)))
}

/// Items (1)–(3) between consecutive accepting positions `i' < i` of an
/// accepting `U` macrorun, for every `j ∈ (i', i]`:
/// (1) `d_j` and `⪯_j` agree on pairs with the first state in `D^j`, and
///     `d_j ≤ i-j` on `D^j`;
/// (2) states outside `D^j` are `⪯_j`-maximal with `d_j > i-j`;
/// (3) `sup d_j(D^j) = i-j` with `sup ∅ = 0`.
/// At each time item (3) is checked first, then (1), then (2).
pub fn check_three_item_correspondence(
    b: &Nba<UState>,
    run: &Macrorun,
    w: &LassoWord,
    sccs: &SccAnalysis,
    rw: &SetProfile,
    d: &DistanceProfile,
) -> Result<(), CorrespondenceViolation> {
    let t_max = horizon(run, w);
    let state = |t: usize| b.payload(run.state_at(t));
    for t in 0..=t_max {
        if state(t).q1 != *rw.at(t) {
            return violation(
                t,
                0,
                format!("Q1 {} differs from {}", state(t).q1, rw.at(t)),
            );
        }
    }
    let accepting: Vec<usize> = (0..=t_max).filter(|&t| state(t).d.is_empty()).collect();
    for seg in accepting.windows(2) {
        let (start, end) = (seg[0], seg[1]);
        for j in start + 1..=end {
            let s = state(j);
            let dj = d.at(j);
            let dom = sccs.domain(s.scc, s.q1);
            let remaining = (end - j) as u32;
            let m = s.d.difference(dom);
            if !m.is_empty() {
                return violation(j, 1, format!("D contains {m} outside the domain {dom}"));
            }
            let Some(mj) = sup(dj, s.d) else {
                return violation(j, 3, "distance undefined on D".into());
            };
            if mj != remaining {
                return violation(j, 3, format!("sup d(D) = {mj}, expected {remaining}"));
            }
            let dist = |q: usize| dj.get(&q).copied();
            for q in s.d {
                for q2 in dom {
                    let (Some(x), Some(y)) = (dist(q), dist(q2)) else {
                        return violation(j, 1, "distance undefined on domain".into());
                    };
                    if (x <= y) != s.preorder.leq(q, q2) {
                        return violation(j, 1, format!("d and preorder disagree on ({q},{q2})"));
                    }
                }
                if dist(q).unwrap() > remaining {
                    return violation(j, 1, format!("d({q}) exceeds {remaining}"));
                }
            }
            for q2 in dom.difference(s.d) {
                for q in dom {
                    if !s.preorder.leq(q, q2) {
                        return violation(j, 2, format!("{q2} outside D is not maximal"));
                    }
                }
                if dist(q2).is_none_or(|v| v <= remaining) {
                    return violation(j, 2, format!("d({q2}) does not exceed {remaining}"));
                }
            }
        }
    }
    Ok(())
}

/// Along an accepting `B_u` macrorun: whenever `D^t ≠ ∅`,
/// `sup d_t(D^t) = sup d_{t+1}(D^{t+1}) + 1` with `sup ∅ = 0`. Returns the
/// first failing time.
pub fn check_breakpoint_countdown(
    b: &Nba<BuState>,
    run: &Macrorun,
    w: &LassoWord,
    d: &DistanceProfile,
) -> Result<(), usize> {
    for t in 0..horizon(run, w) {
        let now = &b.payload(run.state_at(t)).d;
        if now.is_empty() {
            continue;
        }
        let next = &b.payload(run.state_at(t + 1)).d;
        match (sup(d.at(t), *now), sup(d.at(t + 1), *next)) {
            (Some(x), Some(y)) if x == y + 1 => {}
            _ => return Err(t),
        }
    }
    Ok(())
}

/// A `U` transition or initial state that breaks a rule of the definition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditViolation {
    /// `None` for an initial state.
    pub source: Option<usize>,
    pub letter: Option<usize>,
    pub target: usize,
    pub rule: String,
}

impl fmt::Display for AuditViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.source, self.letter) {
            (Some(s), Some(l)) => write!(f, "transition {s} -{l}-> {}: {}", self.target, self.rule),
            _ => write!(f, "initial state {}: {}", self.target, self.rule),
        }
    }
}

/// Re-checks every initial state and transition of a `U` automaton against
/// the definition, using [`check_preorder_step`] for the preorder rule
/// rather than the backward derivation the construction uses.
pub fn audit_u_transitions(a: &Awa, b: &Nba<UState>) -> Vec<AuditViolation> {
    let sccs = a.scc_analysis().expect("audited automaton is weak");
    let n = a.state_count();
    let mut out = Vec::new();
    let mut report = |source, letter, target, rule: &str| {
        out.push(AuditViolation {
            source,
            letter,
            target,
            rule: rule.to_string(),
        })
    };
    for s in 0..b.state_count() {
        let p = b.payload(s);
        if p.q2 != p.q1.complement(n) || p.preorder.domain() != sccs.domain(p.scc, p.q1) {
            report(None, None, s, "malformed macrostate");
        }
        if !p.has_valid_shape() {
            report(
                None,
                None,
                s,
                "D is neither the domain nor the domain without its maximal block",
            );
        }
    }
    for &i in b.initial() {
        let p = b.payload(i);
        let ok = p.q1.contains(a.initial())
            && p.scc == 0
            && p.d.is_empty()
            && p.preorder == TotalPreorder::single_block(sccs.domain(0, p.q1));
        if !ok {
            report(None, None, i, "initial state");
        }
    }
    for (s, l, t) in b.transitions() {
        let (p, q) = (b.payload(s), b.payload(t));
        if !check_local_consistency(a, p.q1, q.q1, l) {
            report(Some(s), Some(l), t, "local consistency");
            continue;
        }
        if p.d.is_empty() {
            let next = sccs.next(p.scc);
            if q.scc != next || q.d != sccs.domain(next, q.q1) {
                report(Some(s), Some(l), t, "reset after breakpoint");
            }
            continue;
        }
        if q.scc != p.scc {
            report(Some(s), Some(l), t, "SCC changed before breakpoint");
            continue;
        }
        if !check_preorder_step(a, &sccs, p.scc, p.q1, &p.preorder, q.q1, &q.preorder, l) {
            report(Some(s), Some(l), t, "preorder rule");
            continue;
        }
        let c = sccs.scc(p.scc);
        let (outside, formulas): (StateSet, Vec<Formula>) = match c.kind {
            SccKind::Rejecting => (
                q.q1.difference(c.states),
                p.d.iter().map(|x| a.delta(x, l).clone()).collect(),
            ),
            _ => (
                q.q1.union(c.states).complement(n),
                p.d.iter().map(|x| a.delta(x, l).dual()).collect(),
            ),
        };
        let expected = (0..=q.preorder.block_count())
            .map(|k| q.preorder.prefix(k))
            .find(|dd| formulas.iter().all(|f| f.eval(dd.union(outside))));
        if expected != Some(q.d) {
            report(Some(s), Some(l), t, "smallest downward-closed D");
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeMap;

    #[test]
    fn sup_of_empty_is_zero() {
        let d = BTreeMap::from([(0usize, 3u32), (2, 1)]);
        assert_eq!(sup(&d, StateSet::EMPTY), Some(0));
        assert_eq!(sup(&d, [0usize, 2].into_iter().collect()), Some(3));
        assert_eq!(sup(&d, StateSet::singleton(1)), None);
    }
}
