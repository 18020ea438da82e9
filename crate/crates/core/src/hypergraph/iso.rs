use super::Hypergraph;

/// Size of the edge containing both vertices, 0 if none (at most one such
/// edge in a linear hypergraph; for non-linear input the largest is used).
fn pair_matrix(h: &Hypergraph) -> Vec<Vec<u8>> {
    let n = h.vertex_count();
    let mut m = vec![vec![0u8; n]; n];
    for e in h.edges() {
        for &a in e {
            for &b in e {
                if a != b {
                    m[a][b] = m[a][b].max(e.len() as u8);
                }
            }
        }
    }
    m
}

fn profile(h: &Hypergraph) -> Vec<(usize, Vec<usize>)> {
    let mut sizes = vec![Vec::new(); h.vertex_count()];
    for e in h.edges() {
        for &v in e {
            sizes[v].push(e.len());
        }
    }
    sizes
        .into_iter()
        .map(|mut s| {
            s.sort_unstable();
            (s.len(), s)
        })
        .collect()
}

/// Searches for a vertex bijection `map` (indexed by vertices of `h1`)
/// carrying the edge set of `h1` exactly onto that of `h2`.
pub fn find_hypergraph_isomorphism(h1: &Hypergraph, h2: &Hypergraph) -> Option<Vec<usize>> {
    let n = h1.vertex_count();
    if n != h2.vertex_count() || h1.edge_count() != h2.edge_count() {
        return None;
    }
    let (p1, p2) = (profile(h1), profile(h2));
    let mut s1 = p1.clone();
    let mut s2 = p2.clone();
    s1.sort();
    s2.sort();
    if s1 != s2 {
        return None;
    }
    let (m1, m2) = (pair_matrix(h1), pair_matrix(h2));

    // Grow the order along adjacency so pair constraints bite early.
    let mut order = Vec::with_capacity(n);
    let mut placed = vec![false; n];
    while order.len() < n {
        let start = (0..n)
            .filter(|&v| !placed[v])
            .max_by_key(|&v| (p1[v].0, std::cmp::Reverse(v)))
            .expect("unplaced vertex remains");
        placed[start] = true;
        order.push(start);
        let mut i = order.len() - 1;
        while i < order.len() {
            let u = order[i];
            for w in 0..n {
                if !placed[w] && m1[u][w] > 0 {
                    placed[w] = true;
                    order.push(w);
                }
            }
            i += 1;
        }
    }

    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    if search(0, &order, &p1, &p2, &m1, &m2, &mut map, &mut used, h1, h2) {
        Some(map)
    } else {
        None
    }
}

#[allow(clippy::too_many_arguments)]
fn search(
    depth: usize,
    order: &[usize],
    p1: &[(usize, Vec<usize>)],
    p2: &[(usize, Vec<usize>)],
    m1: &[Vec<u8>],
    m2: &[Vec<u8>],
    map: &mut [usize],
    used: &mut [bool],
    h1: &Hypergraph,
    h2: &Hypergraph,
) -> bool {
    if depth == order.len() {
        let mut mapped: Vec<Vec<usize>> = h1
            .edges()
            .iter()
            .map(|e| {
                let mut img: Vec<usize> = e.iter().map(|&v| map[v]).collect();
                img.sort_unstable();
                img
            })
            .collect();
        let mut target: Vec<Vec<usize>> = h2.edges().to_vec();
        mapped.sort();
        target.sort();
        return mapped == target;
    }
    let u = order[depth];
    for c in 0..p2.len() {
        if used[c] || p2[c] != p1[u] {
            continue;
        }
        let consistent = order[..depth].iter().all(|&w| m1[u][w] == m2[c][map[w]]);
        if !consistent {
            continue;
        }
        map[u] = c;
        used[c] = true;
        if search(depth + 1, order, p1, p2, m1, m2, map, used, h1, h2) {
            return true;
        }
        used[c] = false;
        map[u] = usize::MAX;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::{family, FamilyKind};

    fn is_iso(h1: &Hypergraph, h2: &Hypergraph, map: &[usize]) -> bool {
        let mut a: Vec<Vec<usize>> = h1
            .edges()
            .iter()
            .map(|e| {
                let mut x: Vec<usize> = e.iter().map(|&v| map[v]).collect();
                x.sort_unstable();
                x
            })
            .collect();
        let mut b = h2.edges().to_vec();
        a.sort();
        b.sort();
        a == b
    }

    #[test]
    fn nested_one_and_beam_one_are_triangles() {
        let n1 = family(FamilyKind::Nested, 1).unwrap();
        let b1 = family(FamilyKind::Beam, 1).unwrap();
        let map = find_hypergraph_isomorphism(&n1, &b1).expect("both are 3-cycles");
        assert!(is_iso(&n1, &b1, &map));
    }

    #[test]
    fn triangle_is_not_a_four_cycle() {
        let t = family(FamilyKind::NCycle, 3).unwrap();
        let c4 = family(FamilyKind::NCycle, 4).unwrap();
        assert!(find_hypergraph_isomorphism(&t, &c4).is_none());
    }

    #[test]
    fn identity_is_found_and_inverse_works() {
        let h = family(FamilyKind::Nested, 2).unwrap();
        let map = find_hypergraph_isomorphism(&h, &h).unwrap();
        assert!(is_iso(&h, &h, &map));

        let shuffled = Hypergraph::from_indices(
            h.vertices().iter().rev().cloned().collect(),
            h.edges()
                .iter()
                .rev()
                .map(|e| e.iter().map(|&v| h.vertex_count() - 1 - v).collect())
                .collect(),
        )
        .unwrap();
        let fwd = find_hypergraph_isomorphism(&h, &shuffled).unwrap();
        let mut inv = vec![0; fwd.len()];
        for (a, &b) in fwd.iter().enumerate() {
            inv[b] = a;
        }
        assert!(is_iso(&shuffled, &h, &inv));
        assert!(find_hypergraph_isomorphism(&shuffled, &h).is_some());
    }

    #[test]
    fn same_counts_different_shape() {
        // beam(2) and fan(2) both have 9 vertices and 5 edges
        let b = family(FamilyKind::Beam, 2).unwrap();
        let f = family(FamilyKind::Fan, 2).unwrap();
        assert_eq!((b.vertex_count(), b.edge_count()), (f.vertex_count(), f.edge_count()));
        let iso = find_hypergraph_isomorphism(&b, &f);
        if let Some(map) = &iso {
            assert!(is_iso(&b, &f, map));
        }
    }
}
