//! Total preorders represented as ordered partitions.

use std::fmt;

use crate::set::StateSet;

/// A total preorder over a state set, stored as an ordered partition into
/// equivalence classes with the minimal class first.
///
/// `q ⪯ q'` iff the block of `q` comes no later than the block of `q'`.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TotalPreorder {
    blocks: Vec<StateSet>,
}

impl TotalPreorder {
    pub fn empty() -> Self {
        TotalPreorder { blocks: Vec::new() }
    }

    /// Panics if a block is empty or two blocks overlap.
    pub fn from_blocks(blocks: Vec<StateSet>) -> Self {
        let mut seen = StateSet::EMPTY;
        for b in &blocks {
            assert!(!b.is_empty(), "empty block in total preorder");
            assert!(b.is_disjoint(seen), "overlapping blocks in total preorder");
            seen = seen.union(*b);
        }
        TotalPreorder { blocks }
    }

    /// The preorder identifying all of `domain` (empty preorder if `domain`
    /// is empty).
    pub fn single_block(domain: StateSet) -> Self {
        if domain.is_empty() {
            Self::empty()
        } else {
            TotalPreorder {
                blocks: vec![domain],
            }
        }
    }

    /// Groups states by rank, smallest rank first.
    pub fn from_ranks<K: Ord + Copy>(ranked: impl IntoIterator<Item = (usize, K)>) -> Self {
        let mut items: Vec<(K, usize)> = ranked.into_iter().map(|(q, k)| (k, q)).collect();
        items.sort();
        let mut blocks: Vec<StateSet> = Vec::new();
        let mut last: Option<K> = None;
        for (k, q) in items {
            if last == Some(k) {
                blocks.last_mut().unwrap().insert(q);
            } else {
                blocks.push(StateSet::singleton(q));
                last = Some(k);
            }
        }
        TotalPreorder { blocks }
    }

    pub fn blocks(&self) -> &[StateSet] {
        &self.blocks
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn domain(&self) -> StateSet {
        self.blocks
            .iter()
            .fold(StateSet::EMPTY, |acc, b| acc.union(*b))
    }

    pub fn block_of(&self, q: usize) -> Option<usize> {
        self.blocks.iter().position(|b| b.contains(q))
    }

    /// `q ⪯ q'`. Panics if either state is outside the domain.
    pub fn leq(&self, q: usize, q2: usize) -> bool {
        self.rank(q) <= self.rank(q2)
    }

    /// `q ≺ q'`.
    pub fn less(&self, q: usize, q2: usize) -> bool {
        self.rank(q) < self.rank(q2)
    }

    /// `q ≃ q'`.
    pub fn equiv(&self, q: usize, q2: usize) -> bool {
        self.rank(q) == self.rank(q2)
    }

    fn rank(&self, q: usize) -> usize {
        self.block_of(q)
            .unwrap_or_else(|| panic!("state {q} outside preorder domain"))
    }

    /// The maximal elements `M` (empty for the empty preorder).
    pub fn maximal(&self) -> StateSet {
        self.blocks.last().copied().unwrap_or_default()
    }

    /// Union of the first `k` blocks.
    pub fn prefix(&self, k: usize) -> StateSet {
        self.blocks[..k]
            .iter()
            .fold(StateSet::EMPTY, |acc, b| acc.union(*b))
    }

    /// `{r' | r' ≺ r}`.
    pub fn strictly_below(&self, r: usize) -> StateSet {
        self.prefix(self.rank(r))
    }

    /// Downward closed: `q ∈ set` and `q' ⪯ q` imply `q' ∈ set`.
    pub fn is_downward_closed(&self, set: StateSet) -> bool {
        (0..=self.blocks.len()).any(|k| self.prefix(k) == set)
    }

    /// Every total preorder over `domain`, in a fixed order.
    pub fn enumerate(domain: StateSet) -> Vec<TotalPreorder> {
        let mut out = Vec::new();
        let mut prefix = Vec::new();
        enumerate_into(domain, &mut prefix, &mut out);
        out
    }
}

fn enumerate_into(rest: StateSet, prefix: &mut Vec<StateSet>, out: &mut Vec<TotalPreorder>) {
    if rest.is_empty() {
        out.push(TotalPreorder {
            blocks: prefix.clone(),
        });
        return;
    }
    for first in rest.subsets().skip(1) {
        prefix.push(first);
        enumerate_into(rest.difference(first), prefix, out);
        prefix.pop();
    }
}

/// Number of total preorders on `n` elements (ordered Bell / Fubini numbers).
///
/// `tpo(n) = Σ_{k=1..n} C(n,k) · tpo(n-k)`, `tpo(0) = 1`. Returns `None` on
/// overflow.
pub fn tpo(n: usize) -> Option<u128> {
    let mut table: Vec<u128> = vec![1];
    for m in 1..=n {
        let mut total: u128 = 0;
        let mut binom: u128 = 1;
        for k in 1..=m {
            binom = binom.checked_mul((m - k + 1) as u128)? / k as u128;
            total = total.checked_add(binom.checked_mul(table[m - k])?)?;
        }
        table.push(total);
    }
    Some(table[n])
}

impl fmt::Display for TotalPreorder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, b) in self.blocks.iter().enumerate() {
            if i > 0 {
                f.write_str("<")?;
            }
            write!(f, "{b}")?;
        }
        f.write_str("]")
    }
}

impl fmt::Debug for TotalPreorder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
