use std::collections::VecDeque;
use std::fmt;

use serde::{Serialize, Serializer};

/// Length of a shortest hypergraph cycle, counted in edges.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Girth {
    Finite(usize),
    Infinite,
}

impl Girth {
    pub fn is_infinite(self) -> bool {
        matches!(self, Girth::Infinite)
    }

    pub fn finite(self) -> Option<usize> {
        match self {
            Girth::Finite(n) => Some(n),
            Girth::Infinite => None,
        }
    }
}

impl fmt::Display for Girth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Girth::Finite(n) => write!(f, "{n}"),
            Girth::Infinite => f.write_str("infinite"),
        }
    }
}

impl Serialize for Girth {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Girth::Finite(n) => s.serialize_u64(*n as u64),
            Girth::Infinite => s.serialize_str("infinite"),
        }
    }
}

/// Hypergraph cycles of length k are exactly the cycles of length 2k in the
/// bipartite incidence graph, so the girth is half the incidence girth.
pub(super) fn girth(n: usize, edges: &[Vec<usize>]) -> Girth {
    let total = n + edges.len();
    let mut adj = vec![Vec::new(); total];
    for (j, e) in edges.iter().enumerate() {
        for &v in e {
            adj[v].push(n + j);
            adj[n + j].push(v);
        }
    }
    let mut best = usize::MAX;
    let mut dist = vec![usize::MAX; total];
    let mut parent = vec![usize::MAX; total];
    let mut queue = VecDeque::new();
    for s in 0..total {
        dist.iter_mut().for_each(|d| *d = usize::MAX);
        dist[s] = 0;
        parent[s] = usize::MAX;
        queue.clear();
        queue.push_back(s);
        while let Some(u) = queue.pop_front() {
            if 2 * dist[u] + 1 >= best {
                break;
            }
            for &w in &adj[u] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    parent[w] = u;
                    queue.push_back(w);
                } else if parent[u] != w {
                    best = best.min(dist[u] + dist[w] + 1);
                }
            }
        }
    }
    if best == usize::MAX {
        Girth::Infinite
    } else {
        Girth::Finite(best / 2)
    }
}

#[cfg(test)]
mod tests {
    use super::super::Hypergraph;
    use super::*;
    use proptest::prelude::*;

    /// Shortest cycle by enumerating sequences of distinct edges and
    /// distinct connecting vertices.
    fn brute_girth(h: &Hypergraph) -> Girth {
        let m = h.edge_count();
        let edges = h.edges();
        let mut best = None;
        fn extend(
            edges: &[Vec<usize>],
            path_e: &mut Vec<usize>,
            path_v: &mut Vec<usize>,
            best: &mut Option<usize>,
        ) {
            let k = path_e.len();
            if best.is_some_and(|b| k >= b) {
                return;
            }
            let first = path_e[0];
            let last = path_e[k - 1];
            // close: a vertex of `last` in `first`, distinct from used vertices
            if k >= 2 {
                for &v in &edges[last] {
                    if edges[first].contains(&v) && !path_v.contains(&v) {
                        *best = Some(best.map_or(k, |b: usize| b.min(k)));
                        return;
                    }
                }
            }
            for next in 0..edges.len() {
                if path_e.contains(&next) || next < first {
                    continue;
                }
                for &v in &edges[last] {
                    if edges[next].contains(&v) && !path_v.contains(&v) {
                        path_e.push(next);
                        path_v.push(v);
                        extend(edges, path_e, path_v, best);
                        path_v.pop();
                        path_e.pop();
                    }
                }
            }
        }
        for s in 0..m {
            extend(edges, &mut vec![s], &mut vec![], &mut best);
        }
        best.map_or(Girth::Infinite, Girth::Finite)
    }

    #[test]
    fn small_cases() {
        let tri = Hypergraph::numbered(6, &[&[1, 2, 3], &[3, 4, 5], &[5, 6, 1]]).unwrap();
        assert_eq!(tri.girth(), Girth::Finite(3));
        let two = Hypergraph::numbered(4, &[&[1, 2, 3], &[2, 3, 4]]).unwrap();
        assert_eq!(two.girth(), Girth::Finite(2));
        let path = Hypergraph::numbered(5, &[&[1, 2, 3], &[3, 4, 5]]).unwrap();
        assert_eq!(path.girth(), Girth::Infinite);
        let single = Hypergraph::numbered(3, &[&[1, 2, 3]]).unwrap();
        assert_eq!(single.girth(), Girth::Infinite);
        let pair_cycle = Hypergraph::numbered(3, &[&[1, 2], &[2, 3], &[3, 1]]).unwrap();
        assert_eq!(pair_cycle.girth(), Girth::Finite(3));
    }

    #[test]
    fn ordering_and_display() {
        assert!(Girth::Finite(100) < Girth::Infinite);
        assert_eq!(Girth::Infinite.to_string(), "infinite");
        assert_eq!(serde_json::to_string(&Girth::Finite(4)).unwrap(), "4");
    }

    fn arb_hypergraph() -> impl Strategy<Value = Hypergraph> {
        (3usize..8).prop_flat_map(|n| {
            let edge = proptest::collection::btree_set(0..n, 2..=3);
            proptest::collection::vec(edge, 1..6).prop_map(move |es| {
                Hypergraph::from_indices(
                    (1..=n).map(|i| format!("u{i}")).collect(),
                    es.into_iter().map(|e| e.into_iter().collect()).collect(),
                )
                .unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn matches_brute_force(h in arb_hypergraph()) {
            // duplicate edges form 2-cycles in the hypergraph sense
            prop_assert_eq!(h.girth(), brute_girth(&h));
        }

        #[test]
        fn linear_iff_girth_at_least_three(h in arb_hypergraph()) {
            prop_assert_eq!(h.is_linear(), h.girth() >= Girth::Finite(3));
        }
    }
}
