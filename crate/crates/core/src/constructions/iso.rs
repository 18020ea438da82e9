use crate::semiring::FiniteSemiring;

/// Counts preserved by every isomorphism, compared before backtracking.
fn signatures(s: &FiniteSemiring) -> Signatures {
    let n = s.size();
    let mut sig = vec![[0usize; 8]; n];
    for x in 0..n {
        sig[x][0] = usize::from(s.mul(x, x) == x);
        sig[x][1] = usize::from(s.add(x, x) == x);
        for y in 0..n {
            sig[s.mul(x, y)][2] += 1;
            sig[s.add(x, y)][3] += 1;
            sig[x][4] += usize::from(s.mul(x, y) == x);
            sig[x][5] += usize::from(s.add(x, y) == x);
            sig[x][6] += usize::from(s.mul(x, y) == y);
            sig[x][7] += usize::from(s.mul(y, x) == s.mul(x, y));
        }
    }
    sig
}

type Signatures = Vec<[usize; 8]>;

struct Search<'a> {
    s1: &'a FiniteSemiring,
    s2: &'a FiniteSemiring,
    sig: Option<(Signatures, Signatures)>,
    map: Vec<Option<usize>>,
    inv: Vec<Option<usize>>,
    assigned: Vec<usize>,
    order: Vec<usize>,
}

impl<'a> Search<'a> {
    fn new(s1: &'a FiniteSemiring, s2: &'a FiniteSemiring, bijective: bool) -> Self {
        let sig = bijective.then(|| (signatures(s1), signatures(s2)));
        // irreducible elements first: they tend to generate the rest
        let mut order: Vec<usize> = (0..s1.size()).collect();
        if let Some((sig1, _)) = &sig {
            order.sort_by_key(|&x| (sig1[x][2] + sig1[x][3], x));
        }
        Self { s1, s2, sig, map: vec![None; s1.size()], inv: vec![None; s2.size()], assigned: Vec::new(), order }
    }

    fn compatible(&self, x: usize, y: usize) -> bool {
        match &self.sig {
            Some((a, b)) => a[x] == b[y],
            None => true,
        }
    }

    fn undo(&mut self, mark: usize) {
        while self.assigned.len() > mark {
            let x = self.assigned.pop().expect("above mark");
            let y = self.map[x].take().expect("assigned");
            self.inv[y] = None;
        }
    }

    /// Assigns `x ↦ y` and everything it forces through both tables.
    fn assign(&mut self, x: usize, y: usize) -> bool {
        let mut work = vec![(x, y)];
        while let Some((x, y)) = work.pop() {
            match (self.map[x], self.inv[y]) {
                (Some(y0), _) if y0 == y => continue,
                (Some(_), _) | (None, Some(_)) => return false,
                _ => {}
            }
            if !self.compatible(x, y) {
                return false;
            }
            self.map[x] = Some(y);
            self.inv[y] = Some(x);
            self.assigned.push(x);
            for k in 0..self.assigned.len() {
                let z = self.assigned[k];
                let fz = self.map[z].expect("assigned");
                let forced = [
                    (self.s1.mul(x, z), self.s2.mul(y, fz)),
                    (self.s1.mul(z, x), self.s2.mul(fz, y)),
                    (self.s1.add(x, z), self.s2.add(y, fz)),
                    (self.s1.add(z, x), self.s2.add(fz, y)),
                ];
                for (a, b) in forced {
                    match self.map[a] {
                        Some(fa) if fa != b => return false,
                        Some(_) => {}
                        None => work.push((a, b)),
                    }
                }
            }
        }
        true
    }

    fn solve(&mut self) -> bool {
        let Some(&x) = self.order.iter().find(|&&x| self.map[x].is_none()) else {
            return true;
        };
        for y in 0..self.s2.size() {
            if self.inv[y].is_some() || !self.compatible(x, y) {
                continue;
            }
            let mark = self.assigned.len();
            if self.assign(x, y) && self.solve() {
                return true;
            }
            self.undo(mark);
        }
        false
    }

    fn run(mut self, seed: &[(usize, usize)]) -> Option<Vec<usize>> {
        for &(x, y) in seed {
            if x >= self.s1.size() || y >= self.s2.size() || !self.assign(x, y) {
                return None;
            }
        }
        if !self.solve() {
            return None;
        }
        Some(self.map.into_iter().map(|y| y.expect("total")).collect())
    }
}

/// Bijection preserving both tables, if any. Deterministic.
pub fn find_semiring_isomorphism(s1: &FiniteSemiring, s2: &FiniteSemiring) -> Option<Vec<usize>> {
    find_semiring_isomorphism_seeded(s1, s2, &[])
}

/// As [`find_semiring_isomorphism`], with some images fixed in advance.
pub fn find_semiring_isomorphism_seeded(
    s1: &FiniteSemiring,
    s2: &FiniteSemiring,
    seed: &[(usize, usize)],
) -> Option<Vec<usize>> {
    if s1.size() != s2.size() {
        return None;
    }
    let search = Search::new(s1, s2, true);
    let (a, b) = search.sig.as_ref().expect("bijective search has signatures");
    let (mut a, mut b) = (a.clone(), b.clone());
    a.sort_unstable();
    b.sort_unstable();
    if a != b {
        return None;
    }
    search.run(seed).filter(|m| is_isomorphism(s1, s2, m))
}

/// Injective map preserving both tables, if any.
pub fn find_embedding(s1: &FiniteSemiring, s2: &FiniteSemiring, seed: &[(usize, usize)]) -> Option<Vec<usize>> {
    if s1.size() > s2.size() {
        return None;
    }
    Search::new(s1, s2, false).run(seed).filter(|m| is_embedding(s1, s2, m))
}

pub fn is_embedding(s1: &FiniteSemiring, s2: &FiniteSemiring, map: &[usize]) -> bool {
    let n = s1.size();
    if map.len() != n || map.iter().any(|&y| y >= s2.size()) {
        return false;
    }
    let mut seen = vec![false; s2.size()];
    if map.iter().any(|&y| std::mem::replace(&mut seen[y], true)) {
        return false;
    }
    (0..n).all(|x| {
        (0..n).all(|y| {
            map[s1.mul(x, y)] == s2.mul(map[x], map[y]) && map[s1.add(x, y)] == s2.add(map[x], map[y])
        })
    })
}

pub fn is_isomorphism(s1: &FiniteSemiring, s2: &FiniteSemiring, map: &[usize]) -> bool {
    s1.size() == s2.size() && is_embedding(s1, s2, map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hg_semiring::build_semiring;
    use crate::hypergraph::{family, FamilyKind, Hypergraph};
    use crate::words::{build_sc_from_str, builtin_s7};

    #[test]
    fn single_edge_is_sc_abc() {
        let s = build_sc_from_str("abc").unwrap();
        let h = build_semiring(&Hypergraph::numbered(3, &[&[1, 2, 3]]).unwrap()).unwrap();
        let m = find_semiring_isomorphism(&s, h.semiring()).unwrap();
        assert!(is_isomorphism(&s, h.semiring(), &m));
    }

    #[test]
    fn sizes_must_agree() {
        let s = build_sc_from_str("abc").unwrap();
        assert!(find_semiring_isomorphism(&builtin_s7(), &s).is_none());
    }

    #[test]
    fn relabeled_triangle() {
        let hs = build_semiring(&family(FamilyKind::Beam, 1).unwrap()).unwrap();
        let s = hs.semiring();
        // reverse the element order
        let order: Vec<usize> = (0..s.size()).rev().collect();
        let r = s.reordered(&order);
        let m = find_semiring_isomorphism(s, &r).unwrap();
        assert!(is_isomorphism(s, &r, &m));
    }

    #[test]
    fn triangle_and_four_cycle_differ_from_neighbours() {
        let t = build_semiring(&family(FamilyKind::Beam, 1).unwrap()).unwrap();
        let c = build_semiring(&family(FamilyKind::NCycle, 3).unwrap()).unwrap();
        assert!(find_semiring_isomorphism(t.semiring(), c.semiring()).is_some());
        let n1 = build_semiring(&family(FamilyKind::Nested, 1).unwrap()).unwrap();
        let c4 = build_semiring(&family(FamilyKind::NCycle, 4).unwrap()).unwrap();
        assert_eq!(n1.semiring().size(), 14);
        assert!(find_semiring_isomorphism(n1.semiring(), t.semiring()).is_some());
        assert!(find_semiring_isomorphism(c4.semiring(), t.semiring()).is_none());
    }

    #[test]
    fn bad_seed_fails() {
        let s = build_sc_from_str("abc").unwrap();
        let (a, ab) = (s.index_of("a").unwrap(), s.index_of("ab").unwrap());
        assert!(find_semiring_isomorphism_seeded(&s, &s, &[(a, ab)]).is_none());
        assert!(find_semiring_isomorphism_seeded(&s, &s, &[(a, a)]).is_some());
    }

    #[test]
    fn sc_abc_embeds_in_four_cycle() {
        let s = build_sc_from_str("abc").unwrap();
        let hs = build_semiring(&family(FamilyKind::NCycle, 4).unwrap()).unwrap();
        let seed: Vec<(usize, usize)> =
            ["a", "b", "c"].iter().zip(0..3).map(|(l, v)| (s.index_of(l).unwrap(), hs.gen_index(v))).collect();
        let m = find_embedding(&s, hs.semiring(), &seed).unwrap();
        assert!(is_embedding(&s, hs.semiring(), &m));
        // a non-edge triple cannot carry abc
        let bad = [(1, hs.gen_index(0)), (2, hs.gen_index(1)), (3, hs.gen_index(3))];
        assert!(find_embedding(&s, hs.semiring(), &bad).is_none());
    }
}
