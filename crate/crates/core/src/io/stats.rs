//! Size statistics of a constructed automaton against the tpo bound.

use serde::Serialize;

use crate::awa::Awa;
use crate::nba::Nba;
use crate::preorder::tpo;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Stats {
    pub n: usize,
    pub scc_count: usize,
    pub largest_scc: usize,
    pub macrostates: usize,
    pub transitions: usize,
    pub accepting_macrostates: usize,
    pub tpo_n: Option<u128>,
    pub bound_4tpo: Option<u128>,
    /// Only meaningful when all states form one SCC.
    pub within_bound: Option<bool>,
}

impl Stats {
    /// Non-weak inputs count as having no SCCs.
    pub fn new<P>(b: &Nba<P>, a: &Awa) -> Stats {
        let (scc_count, largest) = match a.scc_analysis() {
            Ok(s) => (s.len(), s.largest()),
            Err(_) => (0, 0),
        };
        let tpo_n = tpo(largest);
        let bound = tpo_n.and_then(|t| t.checked_mul(4));
        let single = scc_count == 1 && largest == a.state_count();
        Stats {
            n: a.state_count(),
            scc_count,
            largest_scc: largest,
            macrostates: b.state_count(),
            transitions: b.transition_count(),
            accepting_macrostates: b.accepting_count(),
            tpo_n,
            bound_4tpo: bound,
            within_bound: single.then(|| bound.is_none_or(|m| b.state_count() as u128 <= m)),
        }
    }
}

pub fn stats_json<P>(b: &Nba<P>, a: &Awa) -> String {
    serde_json::to_string_pretty(&Stats::new(b, a)).expect("stats serialize")
}
