use rand::seq::index::sample;
use rand::Rng;

use super::Hypergraph;

/// Random 3-uniform hyperforest with `edges` edges: each new edge either
/// hangs off one existing vertex or starts a new component.
pub fn random_hyperforest<R: Rng>(rng: &mut R, edges: usize) -> Hypergraph {
    assert!(edges >= 1, "a hyperforest needs an edge");
    let mut n = 3;
    let mut list = vec![vec![0, 1, 2]];
    while list.len() < edges {
        if rng.gen_bool(0.8) {
            let anchor = rng.gen_range(0..n);
            list.push(vec![anchor, n, n + 1]);
            n += 2;
        } else {
            list.push(vec![n, n + 1, n + 2]);
            n += 3;
        }
    }
    let names = (1..=n).map(|k| format!("u{k}")).collect();
    Hypergraph::from_indices(names, list).expect("fresh vertices keep edges sound")
}

/// Random loop-free hypergraph: `edges` distinct edges of size 2 or 3 over
/// `vertices` vertices. Need not be linear or admissible.
pub fn random_hypergraph<R: Rng>(rng: &mut R, vertices: usize, edges: usize) -> Hypergraph {
    assert!(vertices >= 3, "room for a 3-edge");
    let mut list: Vec<Vec<usize>> = Vec::new();
    let mut attempts = 0;
    while list.len() < edges && attempts < 100 * edges {
        attempts += 1;
        let size = rng.gen_range(2..=3);
        let mut e = sample(rng, vertices, size).into_vec();
        e.sort_unstable();
        if !list.contains(&e) {
            list.push(e);
        }
    }
    let names = (1..=vertices).map(|k| format!("u{k}")).collect();
    Hypergraph::from_indices(names, list).expect("sampled edges have distinct vertices")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn forests_are_acyclic_and_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for k in 1..=12 {
            let h = random_hyperforest(&mut rng, k);
            assert_eq!(h.edge_count(), k);
            assert!(h.girth().is_infinite());
            assert!(h.validate().valid, "{h}");
        }
    }

    #[test]
    fn hypergraphs_are_loop_free() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let h = random_hypergraph(&mut rng, 7, 6);
        assert!(h.edges().iter().all(|e| e.len() >= 2));
        let again = random_hypergraph(&mut ChaCha8Rng::seed_from_u64(8), 7, 6);
        assert_eq!(h.edges(), again.edges());
    }
}
