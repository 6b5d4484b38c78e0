//! Small graph utilities shared by the SCC analysis and the NBA checkers.

use std::collections::VecDeque;

/// Strongly connected components of the graph on `0..n` reachable from
/// `roots` (or of the whole graph when `roots` is `None`).
///
/// Components come out in reverse topological order of the condensation:
/// a component is emitted only after every component it can reach.
/// Iterative Tarjan, so deep product graphs do not overflow the stack.
pub fn tarjan_scc<F>(n: usize, roots: Option<&[usize]>, mut succ: F) -> Vec<Vec<usize>>
where
    F: FnMut(usize, &mut Vec<usize>),
{
    const UNVISITED: usize = usize::MAX;
    let mut index = vec![UNVISITED; n];
    let mut low = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut out = Vec::new();
    let mut counter = 0usize;
    // call frames: (node, successors, next successor position)
    let mut frames: Vec<(usize, Vec<usize>, usize)> = Vec::new();

    let all: Vec<usize>;
    let roots = match roots {
        Some(r) => r,
        None => {
            all = (0..n).collect();
            &all
        }
    };

    for &root in roots {
        if index[root] != UNVISITED {
            continue;
        }
        let mut buf = Vec::new();
        succ(root, &mut buf);
        index[root] = counter;
        low[root] = counter;
        counter += 1;
        stack.push(root);
        on_stack[root] = true;
        frames.push((root, buf, 0));

        while let Some(frame) = frames.last_mut() {
            let v = frame.0;
            if frame.2 < frame.1.len() {
                let w = frame.1[frame.2];
                frame.2 += 1;
                if index[w] == UNVISITED {
                    let mut buf = Vec::new();
                    succ(w, &mut buf);
                    index[w] = counter;
                    low[w] = counter;
                    counter += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    frames.push((w, buf, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                frames.pop();
                if let Some(parent) = frames.last() {
                    let p = parent.0;
                    low[p] = low[p].min(low[v]);
                }
                if low[v] == index[v] {
                    let mut comp = Vec::new();
                    loop {
                        let w = stack.pop().unwrap();
                        on_stack[w] = false;
                        comp.push(w);
                        if w == v {
                            break;
                        }
                    }
                    comp.sort_unstable();
                    out.push(comp);
                }
            }
        }
    }
    out
}

/// Breadth-first shortest path from any node in `sources` to a node
/// satisfying `target`, moving only through nodes accepted by `allowed`.
/// Returns the node sequence including both endpoints.
pub fn bfs_path<F, T, A>(
    n: usize,
    sources: &[usize],
    mut succ: F,
    target: T,
    allowed: A,
) -> Option<Vec<usize>>
where
    F: FnMut(usize, &mut Vec<usize>),
    T: Fn(usize) -> bool,
    A: Fn(usize) -> bool,
{
    let mut parent = vec![usize::MAX; n];
    let mut seen = vec![false; n];
    let mut queue = VecDeque::new();
    for &s in sources {
        if allowed(s) && !seen[s] {
            seen[s] = true;
            queue.push_back(s);
        }
    }
    let mut buf = Vec::new();
    while let Some(v) = queue.pop_front() {
        if target(v) {
            let mut path = vec![v];
            let mut cur = v;
            while parent[cur] != usize::MAX {
                cur = parent[cur];
                path.push(cur);
            }
            path.reverse();
            return Some(path);
        }
        buf.clear();
        succ(v, &mut buf);
        for &w in &buf {
            if allowed(w) && !seen[w] {
                seen[w] = true;
                parent[w] = v;
                queue.push_back(w);
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn adj(edges: &[(usize, usize)], n: usize) -> Vec<Vec<usize>> {
        let mut g = vec![Vec::new(); n];
        for &(a, b) in edges {
            g[a].push(b);
        }
        g
    }

    #[test]
    fn components_in_reverse_topological_order() {
        let g = adj(&[(0, 1), (1, 0), (1, 2), (2, 3), (3, 2), (4, 4)], 5);
        let comps = tarjan_scc(5, None, |v, out| out.extend(&g[v]));
        let pos = |q: usize| comps.iter().position(|c| c.contains(&q)).unwrap();
        assert_eq!(comps.len(), 3);
        assert!(pos(2) < pos(0));
        assert_eq!(comps[pos(0)], vec![0, 1]);
        assert_eq!(comps[pos(4)], vec![4]);
    }

    #[test]
    fn roots_limit_exploration() {
        let g = adj(&[(0, 1), (2, 0)], 3);
        let comps = tarjan_scc(3, Some(&[0]), |v, out| out.extend(&g[v]));
        assert_eq!(comps, vec![vec![1], vec![0]]);
    }

    #[test]
    fn long_chain_does_not_recurse() {
        let n = 200_000;
        let comps = tarjan_scc(n, Some(&[0]), |v, out| {
            if v + 1 < n {
                out.push(v + 1)
            }
        });
        assert_eq!(comps.len(), n);
    }

    #[test]
    fn bfs_finds_shortest() {
        let g = adj(&[(0, 1), (1, 2), (0, 2), (2, 3)], 4);
        let p = bfs_path(4, &[0], |v, out| out.extend(&g[v]), |v| v == 3, |_| true).unwrap();
        assert_eq!(p, vec![0, 2, 3]);
        assert!(bfs_path(4, &[3], |v, out| out.extend(&g[v]), |v| v == 0, |_| true).is_none());
    }
}
