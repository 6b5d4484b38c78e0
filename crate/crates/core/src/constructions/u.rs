use std::fmt;

use crate::awa::Awa;
use crate::error::ConstructionError;
use crate::formula::Formula;
use crate::nba::{explore, Nba, DEFAULT_STATE_LIMIT};
use crate::preorder::TotalPreorder;
use crate::set::StateSet;

use super::{smallest_downward_closed, Analyzed, Successors};

/// Macrostate `(Q1, Q2, ⪯_C, C, D)` tracking the single SCC with
/// round-robin index `scc`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UState {
    pub q1: StateSet,
    pub q2: StateSet,
    pub preorder: TotalPreorder,
    pub scc: usize,
    pub d: StateSet,
}

impl UState {
    /// `D` is the whole preorder domain or the domain minus its maximal
    /// block.
    pub fn has_valid_shape(&self) -> bool {
        let dom = self.preorder.domain();
        self.d == dom || self.d == dom.difference(self.preorder.maximal())
    }
}

impl fmt::Display for UState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}|{}|{}|C{}|D={})",
            self.q1, self.q2, self.preorder, self.scc, self.d
        )
    }
}

pub fn u_construct(a: &Awa) -> Result<Nba<UState>, ConstructionError> {
    u_construct_limited(a, DEFAULT_STATE_LIMIT)
}

pub fn u_construct_limited(a: &Awa, limit: usize) -> Result<Nba<UState>, ConstructionError> {
    let ctx = Analyzed::new(a)?;
    if ctx.sccs().is_empty() {
        return Err(ConstructionError::NoSccs);
    }
    let n = a.state_count();
    // D = ∅ forces every domain state into the maximal block.
    let initials: Vec<UState> = a
        .states()
        .subsets()
        .filter(|s| s.contains(a.initial()))
        .map(|q1| UState {
            q1,
            q2: q1.complement(n),
            preorder: TotalPreorder::single_block(ctx.domain(0, q1)),
            scc: 0,
            d: StateSet::EMPTY,
        })
        .collect();
    let mut succ = Successors::new(&ctx);
    explore(
        a.alphabet(),
        initials,
        |p| p.d.is_empty(),
        |p, letter, out| {
            let nexts = succ.local(p.q1, letter);
            for &q1 in nexts.iter() {
                let q2 = q1.complement(n);
                if p.d.is_empty() {
                    let scc = ctx.sccs().next(p.scc);
                    let dom = ctx.domain(scc, q1);
                    for preorder in TotalPreorder::enumerate(dom) {
                        out.push(UState {
                            q1,
                            q2,
                            preorder,
                            scc,
                            d: dom,
                        });
                    }
                    continue;
                }
                let cands = succ.candidates(p.scc, p.q1, q1, letter);
                let Some(list) = cands.get(&p.preorder) else {
                    continue;
                };
                let obligations: Vec<&Formula> =
                    p.d.iter()
                        .map(|s| ctx.obligation(p.scc, s, letter))
                        .collect();
                let outside = ctx.outside(p.scc, q1);
                for preorder in list {
                    let Some(d) = smallest_downward_closed(preorder, outside, &obligations) else {
                        continue;
                    };
                    let next = UState {
                        q1,
                        q2,
                        preorder: preorder.clone(),
                        scc: p.scc,
                        d,
                    };
                    if next.has_valid_shape() {
                        out.push(next);
                    }
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
    fn t1_states_have_valid_shape() {
        let b = u_construct(&t1()).unwrap();
        for p in b.payloads() {
            assert!(p.has_valid_shape(), "{p}");
            if p.d.is_empty() {
                assert!(p.preorder.block_count() <= 1);
            }
        }
        assert_eq!(b.initial().len(), 2);
    }

    #[test]
    fn display_shows_all_components() {
        let s = UState {
            q1: StateSet::full(2),
            q2: StateSet::EMPTY,
            preorder: TotalPreorder::single_block(StateSet::singleton(0)),
            scc: 0,
            d: StateSet::singleton(0),
        };
        assert_eq!(s.to_string(), "({0,1}|{}|[{0}]|C0|D={0})");
    }
}
