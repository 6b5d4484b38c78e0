//! Runs of NBAs over lasso words: membership, emptiness and explicit
//! enumeration of eventually periodic runs.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{bfs_path, tarjan_scc};
use crate::lasso::LassoWord;
use crate::nba::Nba;

/// Default cap for [`enumerate_lasso_macroruns`].
pub const DEFAULT_RUN_LIMIT: usize = 10_000;

/// An eventually periodic state sequence `stem · cycle^ω`; the state at
/// time `t` is the one before reading letter `t`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Macrorun {
    pub stem: Vec<usize>,
    pub cycle: Vec<usize>,
}

impl Macrorun {
    pub fn state_at(&self, t: usize) -> usize {
        if t < self.stem.len() {
            self.stem[t]
        } else {
            self.cycle[(t - self.stem.len()) % self.cycle.len()]
        }
    }

    /// Shortest stem and primitive cycle describing the same sequence.
    pub fn canonical(&self) -> Macrorun {
        let l = LassoWord::new(self.stem.clone(), self.cycle.clone())
            .expect("macrorun cycle is nonempty")
            .normalize();
        Macrorun {
            stem: l.prefix().to_vec(),
            cycle: l.period().to_vec(),
        }
    }

    /// Number of steps after which the pair (state, letter) sequence has
    /// completed one joint period.
    pub fn horizon(&self, w: &LassoWord) -> usize {
        self.stem.len().max(w.prefix().len()) + lcm(self.cycle.len(), w.period().len())
    }

    /// Starts in an initial state and follows transitions on `w` forever.
    pub fn is_run_of<P>(&self, b: &Nba<P>, w: &LassoWord) -> bool {
        let n = b.state_count();
        if self.stem.iter().chain(&self.cycle).any(|&s| s >= n) || self.cycle.is_empty() {
            return false;
        }
        b.initial().contains(&self.state_at(0))
            && (0..self.horizon(w)).all(|t| {
                b.successors(self.state_at(t), w.at(t))
                    .contains(&self.state_at(t + 1))
            })
    }

    /// Visits an accepting state infinitely often.
    pub fn is_accepting<P>(&self, b: &Nba<P>) -> bool {
        self.cycle.iter().any(|&s| b.is_accepting(s))
    }

    /// The two state sequences differ at some time.
    pub fn differs_from(&self, other: &Macrorun) -> bool {
        let t = self.stem.len().max(other.stem.len()) + lcm(self.cycle.len(), other.cycle.len());
        (0..t).any(|i| self.state_at(i) != other.state_at(i))
    }
}

pub(crate) fn lcm(a: usize, b: usize) -> usize {
    fn gcd(a: usize, b: usize) -> usize {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    a / gcd(a, b) * b
}

/// The product of an NBA with the positions of a lasso; node
/// `s * len + pos` stands for state `s` about to read position `pos`.
struct LassoProduct<'a, P> {
    b: &'a Nba<P>,
    w: &'a LassoWord,
    len: usize,
}

impl<'a, P> LassoProduct<'a, P> {
    fn new(b: &'a Nba<P>, w: &'a LassoWord) -> Self {
        LassoProduct { b, w, len: w.len() }
    }

    fn size(&self) -> usize {
        self.b.state_count() * self.len
    }

    fn roots(&self) -> Vec<usize> {
        self.b.initial().iter().map(|&s| s * self.len).collect()
    }

    fn state(&self, node: usize) -> usize {
        node / self.len
    }

    fn succ(&self, node: usize, out: &mut Vec<usize>) {
        let (s, pos) = (node / self.len, node % self.len);
        let next = self.w.succ(pos);
        out.extend(
            self.b
                .successors(s, self.w.letter(pos))
                .iter()
                .map(|&t| t * self.len + next),
        );
    }

    /// Reachable SCCs, sinks first, each flagged non-trivial or not.
    fn components(&self) -> Vec<(Vec<usize>, bool)> {
        let roots = self.roots();
        let comps = tarjan_scc(self.size(), Some(&roots), |v, out| self.succ(v, out));
        let mut buf = Vec::new();
        comps
            .into_iter()
            .map(|c| {
                let nontrivial = c.len() > 1 || {
                    buf.clear();
                    self.succ(c[0], &mut buf);
                    buf.contains(&c[0])
                };
                (c, nontrivial)
            })
            .collect()
    }
}

/// `w ∈ L(b)`: some reachable cycle of the lasso product contains an
/// accepting state.
pub fn nba_lasso_accepts<P>(b: &Nba<P>, w: &LassoWord) -> bool {
    assert!(
        w.letters_below(b.letter_count()),
        "lasso uses letters outside the alphabet"
    );
    let prod = LassoProduct::new(b, w);
    prod.components()
        .iter()
        .any(|(c, nontrivial)| *nontrivial && c.iter().any(|&v| b.is_accepting(prod.state(v))))
}

/// Some lasso accepted by `b`, or `None` if the language is empty. The
/// witness is re-checked with [`nba_lasso_accepts`] before it is returned.
pub fn nba_is_empty<P>(b: &Nba<P>) -> Option<LassoWord> {
    let n = b.state_count();
    let succ = |v: usize, out: &mut Vec<usize>| {
        for l in 0..b.letter_count() {
            out.extend_from_slice(b.successors(v, l));
        }
    };
    let comps = tarjan_scc(n, Some(b.initial()), succ);
    let mut buf = Vec::new();
    for comp in &comps {
        let Some(&f) = comp.iter().find(|&&s| b.is_accepting(s)) else {
            continue;
        };
        buf.clear();
        succ(f, &mut buf);
        let in_comp = |v: usize| comp.contains(&v);
        if !buf.iter().any(|&v| in_comp(v)) {
            continue;
        }
        let stem = bfs_path(n, b.initial(), succ, |v| v == f, |_| true)
            .expect("component was reached from an initial state");
        let back = bfs_path(n, &buf, succ, |v| v == f, in_comp).expect("f lies on a cycle");
        let mut cycle = vec![f];
        cycle.extend_from_slice(&back);
        let prefix = letters_along(b, &stem);
        let period = letters_along(b, &cycle);
        let w = LassoWord::new(prefix, period).expect("cycle has at least one step");
        assert!(nba_lasso_accepts(b, &w), "emptiness witness failed replay");
        return Some(w);
    }
    None
}

/// Letters labelling consecutive steps of a state path.
fn letters_along<P>(b: &Nba<P>, path: &[usize]) -> Vec<usize> {
    path.windows(2)
        .map(|e| {
            (0..b.letter_count())
                .find(|&l| b.successors(e[0], l).contains(&e[1]))
                .expect("consecutive path states are connected")
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumerationError {
    #[error("more than {0} runs")]
    LimitExceeded(usize),
    #[error("infinitely many runs: a cycle can be left and re-entered or left for another cycle")]
    Unbounded,
}

/// All runs of `b` over `w` (only accepting ones when `accepting_only`),
/// each in canonical stem/cycle form, sorted.
///
/// Runs are paths in the lasso product. Only nodes from which a suitable
/// cycle is reachable matter; if the part of the product spanned by them
/// contains anything other than disjoint terminal simple cycles, there are
/// infinitely many runs and [`EnumerationError::Unbounded`] is returned.
pub fn enumerate_lasso_macroruns<P>(
    b: &Nba<P>,
    w: &LassoWord,
    accepting_only: bool,
    limit: usize,
) -> Result<Vec<Macrorun>, EnumerationError> {
    let prod = LassoProduct::new(b, w);
    let size = prod.size();
    let comps = prod.components();
    let mut good = vec![false; size];
    let mut buf = Vec::new();
    for (comp, nontrivial) in &comps {
        let target =
            *nontrivial && (!accepting_only || comp.iter().any(|&v| b.is_accepting(prod.state(v))));
        let reaches = comp.iter().any(|&v| {
            buf.clear();
            prod.succ(v, &mut buf);
            buf.iter().any(|&t| good[t])
        });
        if target || reaches {
            for &v in comp {
                good[v] = true;
            }
        }
    }
    // Every good non-trivial component must be a terminal simple cycle.
    let mut cycle_next = vec![usize::MAX; size];
    for (comp, nontrivial) in &comps {
        if !*nontrivial || !good[comp[0]] {
            continue;
        }
        for &v in comp {
            buf.clear();
            prod.succ(v, &mut buf);
            let good_succ: Vec<usize> = buf.iter().copied().filter(|&t| good[t]).collect();
            if good_succ.len() != 1 || !comp.contains(&good_succ[0]) {
                return Err(EnumerationError::Unbounded);
            }
            cycle_next[v] = good_succ[0];
        }
        if accepting_only && !comp.iter().any(|&v| b.is_accepting(prod.state(v))) {
            return Err(EnumerationError::Unbounded);
        }
    }
    let mut runs = Vec::new();
    let mut roots: Vec<usize> = prod.roots().into_iter().filter(|&r| good[r]).collect();
    roots.dedup();
    // Depth-first over the acyclic part; each path ends on entering a cycle.
    let mut stack: Vec<(Vec<usize>, usize)> =
        roots.into_iter().rev().map(|r| (Vec::new(), r)).collect();
    while let Some((mut path, v)) = stack.pop() {
        if cycle_next[v] != usize::MAX {
            let mut cycle = vec![prod.state(v)];
            let mut u = cycle_next[v];
            while u != v {
                cycle.push(prod.state(u));
                u = cycle_next[u];
            }
            runs.push(
                Macrorun {
                    stem: path.iter().map(|&x| prod.state(x)).collect(),
                    cycle,
                }
                .canonical(),
            );
            if runs.len() > limit {
                return Err(EnumerationError::LimitExceeded(limit));
            }
            continue;
        }
        path.push(v);
        buf.clear();
        prod.succ(v, &mut buf);
        let nexts: Vec<usize> = buf.iter().copied().filter(|&t| good[t]).collect();
        for &t in nexts.iter().rev() {
            stack.push((path.clone(), t));
        }
    }
    runs.sort();
    Ok(runs)
}
