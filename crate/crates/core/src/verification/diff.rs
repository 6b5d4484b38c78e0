//! Bounded language comparison between an AWA and an NBA on a lasso grid.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::awa::Awa;
use crate::lasso::LassoWord;
use crate::nba::Nba;
use crate::semantics::awa_accepts;

use super::runs::nba_lasso_accepts;

/// Default grid bounds.
pub const DEFAULT_MAX_PREFIX: usize = 3;
pub const DEFAULT_MAX_PERIOD: usize = 4;

/// The side that accepts a witness lasso.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Awa,
    Nba,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum DiffVerdict {
    EquivalentOnGrid,
    Witness { word: LassoWord, accepted_by: Side },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiffReport {
    pub max_prefix: usize,
    pub max_period: usize,
    pub lassos: usize,
    #[serde(flatten)]
    pub verdict: DiffVerdict,
}

impl DiffReport {
    pub fn is_equivalent(&self) -> bool {
        self.verdict == DiffVerdict::EquivalentOnGrid
    }
}

/// Compares `L(a)` and `L(b)` on every normalized lasso with
/// `|u| ≤ max_prefix` and `1 ≤ |v| ≤ max_period`. Lassos are checked in
/// parallel; the first mismatch in grid order is reported. Panics if the
/// alphabets differ.
pub fn bounded_language_diff<P: Sync>(
    a: &Awa,
    b: &Nba<P>,
    max_prefix: usize,
    max_period: usize,
) -> DiffReport {
    assert_eq!(a.alphabet(), b.alphabet(), "diff needs a shared alphabet");
    let grid = LassoWord::grid(a.letter_count(), max_prefix, max_period);
    let mismatch = grid.par_iter().find_map_first(|w| {
        let in_a = awa_accepts(a, a.initial(), w);
        (in_a != nba_lasso_accepts(b, w)).then(|| DiffVerdict::Witness {
            word: w.clone(),
            accepted_by: if in_a { Side::Awa } else { Side::Nba },
        })
    });
    DiffReport {
        max_prefix,
        max_period,
        lassos: grid.len(),
        verdict: mismatch.unwrap_or(DiffVerdict::EquivalentOnGrid),
    }
}
