use std::fmt;

use crate::awa::Awa;
use crate::error::ConstructionError;
use crate::formula::Formula;
use crate::nba::{explore, Nba, DEFAULT_STATE_LIMIT};
use crate::preorder::TotalPreorder;
use crate::set::StateSet;

use super::{smallest_downward_closed, Analyzed, Successors};

/// Macrostate `(Q1, Q2, {⪯_C}, S, D)`; `preorders[c]` belongs to tracked
/// SCC `c` and `scc` is the round-robin index of `S`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BuState {
    pub q1: StateSet,
    pub q2: StateSet,
    pub preorders: Vec<TotalPreorder>,
    pub scc: usize,
    pub d: StateSet,
}

impl fmt::Display for BuState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}|{}|", self.q1, self.q2)?;
        for (i, po) in self.preorders.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{po}")?;
        }
        write!(f, "|C{}|D={})", self.scc, self.d)
    }
}

pub fn bu_construct(a: &Awa) -> Result<Nba<BuState>, ConstructionError> {
    bu_construct_limited(a, DEFAULT_STATE_LIMIT)
}

pub fn bu_construct_limited(a: &Awa, limit: usize) -> Result<Nba<BuState>, ConstructionError> {
    let ctx = Analyzed::new(a)?;
    let k = ctx.sccs().len();
    if k == 0 {
        return Err(ConstructionError::NoSccs);
    }
    let n = a.state_count();
    let mut initials = Vec::new();
    for q1 in a.states().subsets().filter(|s| s.contains(a.initial())) {
        let per_scc: Vec<Vec<TotalPreorder>> = (0..k)
            .map(|c| TotalPreorder::enumerate(ctx.domain(c, q1)))
            .collect();
        for preorders in cartesian(&per_scc) {
            initials.push(BuState {
                q1,
                q2: q1.complement(n),
                preorders,
                scc: 0,
                d: StateSet::EMPTY,
            });
        }
    }
    let mut succ = Successors::new(&ctx);
    explore(
        a.alphabet(),
        initials,
        |p| p.d.is_empty(),
        |p, letter, out| {
            let nexts = succ.local(p.q1, letter);
            for &q1 in nexts.iter() {
                let mut per_scc: Vec<Vec<TotalPreorder>> = Vec::with_capacity(k);
                for c in 0..k {
                    let cands = succ.candidates(c, p.q1, q1, letter);
                    match cands.get(&p.preorders[c]) {
                        Some(list) => per_scc.push(list.clone()),
                        None => break,
                    }
                }
                if per_scc.len() < k {
                    continue;
                }
                let (scc, fixed_d) = if p.d.is_empty() {
                    let s = ctx.sccs().next(p.scc);
                    (s, Some(ctx.domain(s, q1)))
                } else {
                    (p.scc, None)
                };
                let obligations: Vec<&Formula> =
                    p.d.iter()
                        .map(|s| ctx.obligation(p.scc, s, letter))
                        .collect();
                let outside = ctx.outside(p.scc, q1);
                for preorders in cartesian(&per_scc) {
                    let d = match fixed_d {
                        Some(d) => d,
                        None => {
                            match smallest_downward_closed(&preorders[scc], outside, &obligations) {
                                Some(d) => d,
                                None => continue,
                            }
                        }
                    };
                    out.push(BuState {
                        q1,
                        q2: q1.complement(n),
                        preorders,
                        scc,
                        d,
                    });
                }
            }
        },
        limit,
    )
}

/// Every combination picking one element per list.
fn cartesian<T: Clone>(lists: &[Vec<T>]) -> Vec<Vec<T>> {
    let mut out = vec![Vec::with_capacity(lists.len())];
    for list in lists {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                list.iter().map(move |x| {
                    let mut v = prefix.clone();
                    v.push(x.clone());
                    v
                })
            })
            .collect();
    }
    out
}
