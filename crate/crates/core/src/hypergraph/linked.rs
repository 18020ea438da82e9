use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};

use super::Hypergraph;

/// An unordered vertex pair stored with the smaller index first.
pub type VertexPair = (usize, usize);

/// One class of the linkage relation on 2-element subhyperedges of size-3
/// edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinkedClass {
    /// Least member, comparing vertex names.
    pub representative: VertexPair,
    /// Sorted by vertex names.
    pub members: Vec<VertexPair>,
    /// The vertex completing every member to an edge, when there is one.
    pub completion: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinkedClasses {
    classes: Vec<LinkedClass>,
    class_of: BTreeMap<VertexPair, usize>,
    /// Pairs merged only by transitive closure, not by direct linkage.
    pub closure_additions: Vec<(VertexPair, VertexPair)>,
}

fn normalize(a: usize, b: usize) -> VertexPair {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

impl LinkedClasses {
    /// Two pairs are linked when a single vertex completes both to edges.
    /// The relation is closed transitively; any pair merged only by the
    /// closure is recorded and logged.
    pub fn compute(h: &Hypergraph) -> Self {
        let mut completers: BTreeMap<VertexPair, BTreeSet<usize>> = BTreeMap::new();
        for e in h.edges().iter().filter(|e| e.len() == 3) {
            for (i, j, k) in [(0, 1, 2), (0, 2, 1), (1, 2, 0)] {
                completers.entry(normalize(e[i], e[j])).or_default().insert(e[k]);
            }
        }
        let pairs: Vec<VertexPair> = completers.keys().copied().collect();

        let mut by_completer: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (i, p) in pairs.iter().enumerate() {
            for &w in &completers[p] {
                by_completer.entry(w).or_default().push(i);
            }
        }
        let mut parent: Vec<usize> = (0..pairs.len()).collect();
        for group in by_completer.values() {
            for &i in &group[1..] {
                let (a, b) = (find(&mut parent, group[0]), find(&mut parent, i));
                if a != b {
                    parent[b] = a;
                }
            }
        }

        let mut groups: BTreeMap<usize, Vec<VertexPair>> = BTreeMap::new();
        for (i, &p) in pairs.iter().enumerate() {
            let root = find(&mut parent, i);
            groups.entry(root).or_default().push(p);
        }

        let name_cmp = |x: &VertexPair, y: &VertexPair| -> Ordering {
            let key = |p: &VertexPair| {
                let (a, b) = (h.vertex_name(p.0), h.vertex_name(p.1));
                if a <= b {
                    (a, b)
                } else {
                    (b, a)
                }
            };
            key(x).cmp(&key(y))
        };

        let mut closure_additions = Vec::new();
        let mut classes: Vec<LinkedClass> = groups
            .into_values()
            .map(|mut members| {
                members.sort_by(name_cmp);
                for (i, p) in members.iter().enumerate() {
                    for q in &members[i + 1..] {
                        if completers[p].is_disjoint(&completers[q]) {
                            log::warn!(
                                "linkage closure joined {{{},{}}} and {{{},{}}}",
                                h.vertex_name(p.0),
                                h.vertex_name(p.1),
                                h.vertex_name(q.0),
                                h.vertex_name(q.1)
                            );
                            closure_additions.push((*p, *q));
                        }
                    }
                }
                let mut common: Option<BTreeSet<usize>> = None;
                for p in &members {
                    common = Some(match common {
                        None => completers[p].clone(),
                        Some(c) => c.intersection(&completers[p]).copied().collect(),
                    });
                }
                let common = common.unwrap_or_default();
                LinkedClass {
                    representative: members[0],
                    completion: if common.len() == 1 { common.first().copied() } else { None },
                    members,
                }
            })
            .collect();
        classes.sort_by(|a, b| name_cmp(&a.representative, &b.representative));

        let mut class_of = BTreeMap::new();
        for (c, class) in classes.iter().enumerate() {
            for &p in &class.members {
                class_of.insert(p, c);
            }
        }
        Self {
            classes,
            class_of,
            closure_additions,
        }
    }

    pub fn classes(&self) -> &[LinkedClass] {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// Class index of the pair `{a, b}`, if it lies in a size-3 edge.
    pub fn class_of(&self, a: usize, b: usize) -> Option<usize> {
        self.class_of.get(&normalize(a, b)).copied()
    }

    pub fn pair_count(&self) -> usize {
        self.class_of.len()
    }
}
