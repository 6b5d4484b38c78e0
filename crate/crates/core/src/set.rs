use std::fmt;

/// Maximum number of alternating-automaton states a [`StateSet`] can hold.
pub const MAX_STATES: usize = 64;

/// A set of alternating-automaton states, stored as a bit mask.
///
/// Ordering and hashing follow the mask, which makes the set usable as a
/// canonical component of macrostate payloads.
#[derive(Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StateSet(u64);

impl StateSet {
    pub const EMPTY: StateSet = StateSet(0);

    pub fn from_bits(bits: u64) -> Self {
        StateSet(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    /// The set `{0, .., n-1}`.
    pub fn full(n: usize) -> Self {
        assert!(n <= MAX_STATES, "at most {MAX_STATES} states are supported");
        if n == MAX_STATES {
            StateSet(u64::MAX)
        } else {
            StateSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(q: usize) -> Self {
        debug_assert!(q < MAX_STATES);
        StateSet(1u64 << q)
    }

    pub fn contains(self, q: usize) -> bool {
        q < MAX_STATES && self.0 & (1u64 << q) != 0
    }

    pub fn insert(&mut self, q: usize) {
        debug_assert!(q < MAX_STATES);
        self.0 |= 1u64 << q;
    }

    pub fn remove(&mut self, q: usize) {
        self.0 &= !(1u64 << q);
    }

    pub fn with(mut self, q: usize) -> Self {
        self.insert(q);
        self
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn union(self, other: StateSet) -> StateSet {
        StateSet(self.0 | other.0)
    }

    pub fn intersection(self, other: StateSet) -> StateSet {
        StateSet(self.0 & other.0)
    }

    pub fn difference(self, other: StateSet) -> StateSet {
        StateSet(self.0 & !other.0)
    }

    /// Complement relative to `{0, .., n-1}`.
    pub fn complement(self, n: usize) -> StateSet {
        StateSet::full(n).difference(self)
    }

    pub fn is_subset(self, other: StateSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: StateSet) -> bool {
        self.0 & other.0 == 0
    }

    /// Smallest member, if any.
    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn iter(self) -> Iter {
        Iter(self.0)
    }

    /// All subsets of `self`, starting with the empty set.
    pub fn subsets(self) -> Subsets {
        Subsets {
            mask: self.0,
            next: Some(0),
        }
    }
}

impl FromIterator<usize> for StateSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut set = StateSet::EMPTY;
        for q in iter {
            set.insert(q);
        }
        set
    }
}

impl IntoIterator for StateSet {
    type Item = usize;
    type IntoIter = Iter;

    fn into_iter(self) -> Iter {
        self.iter()
    }
}

pub struct Iter(u64);

impl Iterator for Iter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let q = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(q)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Iter {}

/// Enumerates the subsets of a mask with the standard `(s - m) & m` walk.
pub struct Subsets {
    mask: u64,
    next: Option<u64>,
}

impl Iterator for Subsets {
    type Item = StateSet;

    fn next(&mut self) -> Option<StateSet> {
        let cur = self.next?;
        let nxt = cur.wrapping_sub(self.mask) & self.mask;
        self.next = (nxt != 0).then_some(nxt);
        Some(StateSet(cur))
    }
}

impl fmt::Display for StateSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, q) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{q}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for StateSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subsets_of_three_elements() {
        let set: StateSet = [0, 2, 5].into_iter().collect();
        let subs: Vec<_> = set.subsets().collect();
        assert_eq!(subs.len(), 8);
        assert_eq!(subs[0], StateSet::EMPTY);
        assert!(subs.iter().all(|s| s.is_subset(set)));
        let mut dedup = subs.clone();
        dedup.sort();
        dedup.dedup();
        assert_eq!(dedup.len(), 8);
    }

    #[test]
    fn empty_mask_has_only_empty_subset() {
        assert_eq!(StateSet::EMPTY.subsets().count(), 1);
    }

    #[test]
    fn display_is_sorted() {
        let set: StateSet = [3, 1].into_iter().collect();
        assert_eq!(set.to_string(), "{1,3}");
        assert_eq!(StateSet::EMPTY.to_string(), "{}");
    }

    #[test]
    fn full_and_complement() {
        assert_eq!(StateSet::full(3).len(), 3);
        assert_eq!(StateSet::full(64).len(), 64);
        let s = StateSet::singleton(1);
        assert_eq!(s.complement(3), [0, 2].into_iter().collect());
    }
}
