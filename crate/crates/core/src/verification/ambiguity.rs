//! Ambiguity detection through the self-product of an NBA.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{bfs_path, tarjan_scc};
use crate::lasso::LassoWord;
use crate::nba::Nba;

use super::runs::Macrorun;

/// Default cap on the number of self-product nodes.
pub const DEFAULT_PRODUCT_LIMIT: usize = 50_000_000;

/// Two different accepting runs over the same lasso. Both runs are aligned
/// with `word` (stem length = prefix length, cycle length = period length).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AmbiguityWitness {
    pub word: LassoWord,
    pub run1: Macrorun,
    pub run2: Macrorun,
}

impl AmbiguityWitness {
    /// Replays both runs: valid, accepting, and different.
    pub fn validate<P>(&self, b: &Nba<P>) -> bool {
        [&self.run1, &self.run2]
            .iter()
            .all(|r| r.is_run_of(b, &self.word) && r.is_accepting(b))
            && self.run1.differs_from(&self.run2)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("self-product exceeded {0} nodes")]
pub struct ProductTooLarge(pub usize);

pub fn ambiguity_check<P>(b: &Nba<P>) -> Option<AmbiguityWitness> {
    ambiguity_check_limited(b, DEFAULT_PRODUCT_LIMIT).expect("self-product within default limit")
}

/// Searches the self-product over pairs `(p, q, diverged)` restricted to
/// useful states. `b` is ambiguous iff some reachable non-trivial product
/// SCC has `diverged` set and contains both a node with `p ∈ F` and a node
/// with `q ∈ F`. The witness is validated by replay before it is returned.
pub fn ambiguity_check_limited<P>(
    b: &Nba<P>,
    limit: usize,
) -> Result<Option<AmbiguityWitness>, ProductTooLarge> {
    let useful = b.useful_states();
    let mut index: HashMap<(u32, u32, bool), usize> = HashMap::new();
    let mut nodes: Vec<(u32, u32, bool)> = Vec::new();
    let mut edges: Vec<Vec<usize>> = Vec::new();
    let mut intern =
        |key: (u32, u32, bool), nodes: &mut Vec<_>| -> Result<usize, ProductTooLarge> {
            if let Some(&i) = index.get(&key) {
                return Ok(i);
            }
            if nodes.len() >= limit {
                return Err(ProductTooLarge(limit));
            }
            nodes.push(key);
            index.insert(key, nodes.len() - 1);
            Ok(nodes.len() - 1)
        };
    let inits: Vec<usize> = b.initial().iter().copied().filter(|&s| useful[s]).collect();
    let mut roots = Vec::new();
    for &p in &inits {
        for &q in &inits {
            roots.push(intern((p as u32, q as u32, p != q), &mut nodes)?);
        }
    }
    let mut next = 0;
    while next < nodes.len() {
        let (p, q, div) = nodes[next];
        let mut out = Vec::new();
        for l in 0..b.letter_count() {
            for &p2 in b.successors(p as usize, l) {
                if !useful[p2] {
                    continue;
                }
                for &q2 in b.successors(q as usize, l) {
                    if useful[q2] {
                        out.push(intern((p2 as u32, q2 as u32, div || p2 != q2), &mut nodes)?);
                    }
                }
            }
        }
        out.sort_unstable();
        out.dedup();
        edges.push(out);
        next += 1;
    }
    let n = nodes.len();
    let succ = |v: usize, out: &mut Vec<usize>| out.extend_from_slice(&edges[v]);
    for comp in tarjan_scc(n, Some(&roots), succ) {
        let nontrivial = comp.len() > 1 || edges[comp[0]].contains(&comp[0]);
        if !nontrivial || !nodes[comp[0]].2 {
            continue;
        }
        let fp = comp
            .iter()
            .copied()
            .find(|&v| b.is_accepting(nodes[v].0 as usize));
        let fq = comp
            .iter()
            .copied()
            .find(|&v| b.is_accepting(nodes[v].1 as usize));
        let (Some(fp), Some(fq)) = (fp, fq) else {
            continue;
        };
        let in_comp = |v: usize| comp.contains(&v);
        let stem = bfs_path(n, &roots, succ, |v| v == fp, |_| true).expect("reachable component");
        // cycle fp -> fq -> fp with at least one step
        let mut cycle = vec![fp];
        let to_q = bfs_path(n, &edges[fp], succ, |v| v == fq, in_comp).expect("same component");
        cycle.extend_from_slice(&to_q);
        let back = bfs_path(n, &edges[fq], succ, |v| v == fp, in_comp).expect("same component");
        cycle.extend_from_slice(&back);
        cycle.pop();
        let step_letter = |x: usize, y: usize| {
            let ((p, q, _), (p2, q2, _)) = (nodes[x], nodes[y]);
            (0..b.letter_count())
                .find(|&l| {
                    b.successors(p as usize, l).contains(&(p2 as usize))
                        && b.successors(q as usize, l).contains(&(q2 as usize))
                })
                .expect("product edge has a letter")
        };
        let prefix: Vec<usize> = stem.windows(2).map(|e| step_letter(e[0], e[1])).collect();
        let period: Vec<usize> = (0..cycle.len())
            .map(|i| step_letter(cycle[i], cycle[(i + 1) % cycle.len()]))
            .collect();
        let stem_nodes = &stem[..stem.len() - 1];
        let project = |nodes_on: &[usize], first: bool| -> Vec<usize> {
            nodes_on
                .iter()
                .map(|&v| {
                    if first {
                        nodes[v].0 as usize
                    } else {
                        nodes[v].1 as usize
                    }
                })
                .collect()
        };
        let witness = AmbiguityWitness {
            word: LassoWord::new(prefix, period).expect("nonempty cycle"),
            run1: Macrorun {
                stem: project(stem_nodes, true),
                cycle: project(&cycle, true),
            },
            run2: Macrorun {
                stem: project(stem_nodes, false),
                cycle: project(&cycle, false),
            },
        };
        assert!(witness.validate(b), "ambiguity witness failed replay");
        return Ok(Some(witness));
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab() -> Vec<String> {
        vec!["a".into(), "b".into()]
    }

    #[test]
    fn deterministic_is_unambiguous() {
        let b = Nba::new(
            ab(),
            vec![(); 2],
            vec![0],
            vec![true, false],
            vec![vec![vec![0], vec![1]], vec![vec![0], vec![1]]],
        )
        .unwrap();
        assert_eq!(ambiguity_check(&b), None);
    }

    #[test]
    fn two_accepting_copies_are_ambiguous() {
        let b = Nba::new(
            ab(),
            vec![(); 3],
            vec![0],
            vec![false, true, true],
            vec![
                vec![vec![1, 2], vec![]],
                vec![vec![1], vec![]],
                vec![vec![2], vec![]],
            ],
        )
        .unwrap();
        let w = ambiguity_check(&b).unwrap();
        assert!(w.validate(&b));
        assert_eq!(w.word.normalize(), LassoWord::new(vec![], vec![0]).unwrap());
    }

    #[test]
    fn divergent_runs_that_cannot_both_accept_are_fine() {
        // 0 -a-> {1,2}; 1 accepts a^ω, 2 accepts b^ω
        let b = Nba::new(
            ab(),
            vec![(); 3],
            vec![0],
            vec![false, true, true],
            vec![
                vec![vec![1, 2], vec![]],
                vec![vec![1], vec![]],
                vec![vec![], vec![2]],
            ],
        )
        .unwrap();
        assert_eq!(ambiguity_check(&b), None);
    }

    #[test]
    fn limit_is_reported() {
        let b = Nba::new(
            ab(),
            vec![(); 1],
            vec![0],
            vec![true],
            vec![vec![vec![0], vec![0]]],
        )
        .unwrap();
        assert_eq!(ambiguity_check_limited(&b, 0), Err(ProductTooLarge(0)));
    }
}
