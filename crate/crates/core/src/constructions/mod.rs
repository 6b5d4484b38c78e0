//! Constructions from weak alternating automata to Büchi automata:
//! the breakpoint construction, the four-set construction, the
//! preorder-family construction `B_u`, the single-preorder construction `U`,
//! and the safety automaton used when no SCC exists.

use std::collections::HashMap;
use std::fmt;
use std::rc::Rc;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::awa::Awa;
use crate::error::{ConstructionError, WeaknessViolation};
use crate::formula::Formula;
use crate::nba::{Nba, DEFAULT_STATE_LIMIT};
use crate::preorder::TotalPreorder;
use crate::scc::{SccAnalysis, SccKind};
use crate::set::StateSet;

mod brv;
mod bu;
mod mh;
mod safety;
mod u;

pub use brv::{brv_construct, brv_construct_limited, BrvState};
pub use bu::{bu_construct, bu_construct_limited, BuState};
pub use mh::{miyano_hayashi, miyano_hayashi_limited, MhState, MhSuccessors};
pub use safety::{safety_fallback, SafetyState};
pub use u::{u_construct, u_construct_limited, UState};

/// A weak automaton together with its dual and SCC analysis.
pub struct Analyzed<'a> {
    awa: &'a Awa,
    dual: Awa,
    sccs: SccAnalysis,
}

impl<'a> Analyzed<'a> {
    pub fn new(awa: &'a Awa) -> Result<Analyzed<'a>, WeaknessViolation> {
        Ok(Analyzed {
            awa,
            dual: awa.dualize(),
            sccs: awa.scc_analysis()?,
        })
    }

    pub fn awa(&self) -> &Awa {
        self.awa
    }

    pub fn dual(&self) -> &Awa {
        &self.dual
    }

    pub fn sccs(&self) -> &SccAnalysis {
        &self.sccs
    }

    /// States of tracked SCC `scc` whose obligations are carried at a level
    /// with accepting-suffix set `q1`.
    pub fn domain(&self, scc: usize, q1: StateSet) -> StateSet {
        self.sccs.domain(scc, q1)
    }

    /// `δ(q,σ)` for rejecting SCCs, `δ̂(q,σ)` for accepting ones.
    pub fn obligation(&self, scc: usize, q: usize, letter: usize) -> &Formula {
        match self.sccs.scc(scc).kind {
            SccKind::Rejecting => self.awa.delta(q, letter),
            _ => self.dual.delta(q, letter),
        }
    }

    /// Next-level states outside the SCC that discharge an obligation:
    /// `Q1' \ C` for rejecting, `Q2' \ C` for accepting `C`.
    pub fn outside(&self, scc: usize, q1_next: StateSet) -> StateSet {
        let c = self.sccs.scc(scc);
        match c.kind {
            SccKind::Rejecting => q1_next.difference(c.states),
            _ => q1_next.union(c.states).complement(self.awa.state_count()),
        }
    }

    /// Every `Q1'` locally consistent with `q1` on `letter`.
    pub fn local_successors(&self, q1: StateSet, letter: usize) -> Vec<StateSet> {
        let n = self.awa.state_count();
        let q2 = q1.complement(n);
        StateSet::full(n)
            .subsets()
            .filter(|&next| {
                let next2 = next.complement(n);
                q1.iter().all(|q| self.awa.delta(q, letter).eval(next))
                    && q2.iter().all(|q| self.dual.delta(q, letter).eval(next2))
            })
            .collect()
    }
}

/// All `Q1' ⊆ Q` with `Q1' ⊨ ∧_{s∈q1} δ(s,σ)` and
/// `Q \ Q1' ⊨ ∧_{s∉q1} δ̂(s,σ)`, in ascending bit order.
pub fn enumerate_q1_successors(a: &Awa, q1: StateSet, letter: usize) -> Vec<StateSet> {
    a.states()
        .subsets()
        .filter(|&next| crate::semantics::check_local_consistency(a, q1, next, letter))
        .collect()
}

/// The unique preorder over the level domain of `scc` at `q1` that stands
/// in relation R1' (rejecting) or R2' (accepting) to `po_next` on `letter`.
///
/// Each domain state is ranked by the least `j` such that the first `j`
/// blocks of `po_next` together with the discharged outside states satisfy
/// its obligation. `None` when some state cannot be satisfied at all.
pub fn backward_preorder(
    ctx: &Analyzed,
    scc: usize,
    q1: StateSet,
    q1_next: StateSet,
    po_next: &TotalPreorder,
    letter: usize,
) -> Option<TotalPreorder> {
    let outside = ctx.outside(scc, q1_next);
    let prefixes: Vec<StateSet> = (0..=po_next.block_count())
        .map(|j| po_next.prefix(j).union(outside))
        .collect();
    let mut ranks = Vec::new();
    for q in ctx.domain(scc, q1) {
        let f = ctx.obligation(scc, q, letter);
        let j = prefixes.iter().position(|&s| f.eval(s))?;
        ranks.push((q, j));
    }
    Some(TotalPreorder::from_ranks(ranks))
}

/// The ⊆-least set downward closed under `po_next` that, joined with
/// `outside`, satisfies every formula; `None` if even the whole domain
/// does not suffice.
pub fn smallest_downward_closed(
    po_next: &TotalPreorder,
    outside: StateSet,
    formulas: &[&Formula],
) -> Option<StateSet> {
    (0..=po_next.block_count())
        .map(|k| po_next.prefix(k))
        .find(|d| formulas.iter().all(|f| f.eval(d.union(outside))))
}

type CandidateMap = HashMap<TotalPreorder, Vec<TotalPreorder>>;

/// Memoized successor enumeration shared by `B_u` and `U`.
struct Successors<'c, 'a> {
    ctx: &'c Analyzed<'a>,
    local: HashMap<(StateSet, usize), Rc<Vec<StateSet>>>,
    candidates: HashMap<(usize, StateSet, StateSet, usize), Rc<CandidateMap>>,
}

impl<'c, 'a> Successors<'c, 'a> {
    fn new(ctx: &'c Analyzed<'a>) -> Self {
        Successors {
            ctx,
            local: HashMap::new(),
            candidates: HashMap::new(),
        }
    }

    fn local(&mut self, q1: StateSet, letter: usize) -> Rc<Vec<StateSet>> {
        let ctx = self.ctx;
        self.local
            .entry((q1, letter))
            .or_insert_with(|| Rc::new(ctx.local_successors(q1, letter)))
            .clone()
    }

    /// Next-level preorders for `scc`, grouped by the preorder they
    /// back-derive to at level `q1`.
    fn candidates(
        &mut self,
        scc: usize,
        q1: StateSet,
        q1_next: StateSet,
        letter: usize,
    ) -> Rc<CandidateMap> {
        let ctx = self.ctx;
        let dom = ctx.domain(scc, q1);
        self.candidates
            .entry((scc, dom, q1_next, letter))
            .or_insert_with(|| {
                let mut map: CandidateMap = HashMap::new();
                for po_next in TotalPreorder::enumerate(ctx.domain(scc, q1_next)) {
                    if let Some(po) = backward_preorder(ctx, scc, q1, q1_next, &po_next, letter) {
                        map.entry(po).or_default().push(po_next);
                    }
                }
                Rc::new(map)
            })
            .clone()
    }
}

/// Which construction to run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    Mh,
    Brv,
    Bu,
    U,
    Safety,
    /// `U`, or the safety automaton when there is no non-trivial SCC.
    Auto,
}

impl Algorithm {
    pub const ALL: [Algorithm; 6] = [
        Algorithm::Mh,
        Algorithm::Brv,
        Algorithm::Bu,
        Algorithm::U,
        Algorithm::Safety,
        Algorithm::Auto,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Mh => "mh",
            Algorithm::Brv => "brv",
            Algorithm::Bu => "bu",
            Algorithm::U => "u",
            Algorithm::Safety => "safety",
            Algorithm::Auto => "auto",
        }
    }

    /// Replaces `Auto` by the concrete choice for `a`. `Bu` and `U` also
    /// fall back to the safety automaton when `a` has no tracked SCC.
    pub fn resolve(self, a: &Awa) -> Result<Algorithm, WeaknessViolation> {
        let no_sccs = a.scc_analysis()?.is_empty();
        Ok(match self {
            Algorithm::Auto | Algorithm::Bu | Algorithm::U if no_sccs => Algorithm::Safety,
            Algorithm::Auto => Algorithm::U,
            other => other,
        })
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| {
                format!("unknown algorithm `{s}` (expected mh, brv, bu, u, safety or auto)")
            })
    }
}

/// Runs a construction and renders payloads as strings, for callers that
/// do not care about the macrostate type.
pub fn build(a: &Awa, algo: Algorithm, limit: usize) -> Result<Nba<String>, ConstructionError> {
    Ok(match algo.resolve(a)? {
        Algorithm::Mh => {
            miyano_hayashi_limited(a, MhSuccessors::All, limit)?.map_payload(ToString::to_string)
        }
        Algorithm::Brv => brv_construct_limited(a, limit)?.map_payload(ToString::to_string),
        Algorithm::Bu => bu_construct_limited(a, limit)?.map_payload(ToString::to_string),
        Algorithm::U => u_construct_limited(a, limit)?.map_payload(ToString::to_string),
        Algorithm::Safety => safety_fallback(a)?.map_payload(ToString::to_string),
        Algorithm::Auto => unreachable!("resolved above"),
    })
}

/// [`build`] with the default macrostate limit.
pub fn build_default(a: &Awa, algo: Algorithm) -> Result<Nba<String>, ConstructionError> {
    build(a, algo, DEFAULT_STATE_LIMIT)
}
