//! The 3-hypergraph semigroup and semiring, built from normal forms.
//!
//! Every non-zero element is a generator `a_u`, a class of linked
//! 2-subhyperedges, or the top `ā` carried by every full edge product.
//! Products of four or more generators vanish.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::hypergraph::{Hypergraph, HypergraphError, LinkedClasses};
use crate::semiring::{flat_completion, FiniteSemiring, SemigroupWithZero, SemiringError};

#[derive(Debug, Error)]
pub enum HgError {
    #[error(transparent)]
    Hypergraph(#[from] HypergraphError),
    #[error(transparent)]
    Semiring(#[from] SemiringError),
    #[error("element {0:?} does not belong to this hypergraph semiring")]
    ForeignElement(HgElement),
    #[error("linked class {0} has no common completing vertex; products would depend on the representative")]
    AmbiguousClass(String),
    #[error("normal-form table is not associative at ({0}, {1}, {2})")]
    NotAssociative(String, String, String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum HgElement {
    Zero,
    Gen(usize),
    PairClass(usize),
    Top,
}

#[derive(Debug, Clone)]
pub struct HypergraphSemiring {
    source: Hypergraph,
    classes: LinkedClasses,
    elements: Vec<HgElement>,
    semiring: FiniteSemiring,
    flags: Vec<String>,
}

impl HypergraphSemiring {
    /// Builds `S_H` for an admissible hypergraph, checking associativity of
    /// the normal-form table exhaustively.
    pub fn build(h: &Hypergraph) -> Result<Self, HgError> {
        h.ensure_valid()?;
        let classes = h.linked_classes();
        for c in classes.classes() {
            if c.completion.is_none() {
                let (a, b) = c.representative;
                return Err(HgError::AmbiguousClass(format!("{{{},{}}}", h.vertex_name(a), h.vertex_name(b))));
            }
        }
        let mut flags = Vec::new();
        if !h.edges().iter().any(|e| e.len() == 3) {
            flags.push("no size-3 edge: no generator triple multiplies to TOP".to_string());
        }
        if !classes.closure_additions.is_empty() {
            flags.push(format!("linked closure enlarged {} class pair(s)", classes.closure_additions.len()));
        }

        let mut elements = vec![HgElement::Zero];
        elements.extend((0..h.vertex_count()).map(HgElement::Gen));
        elements.extend((0..classes.len()).map(HgElement::PairClass));
        elements.push(HgElement::Top);

        let mut hs = Self {
            source: h.clone(),
            classes,
            elements,
            semiring: FiniteSemiring::from_fn(vec!["0".into()], Some(0), |_, _| 0, |_, _| 0)?,
            flags,
        };
        let sg = hs.build_semigroup();
        if let Some((a, b, c)) = sg.associativity_failure() {
            return Err(HgError::NotAssociative(
                sg.labels[a].clone(),
                sg.labels[b].clone(),
                sg.labels[c].clone(),
            ));
        }
        hs.semiring = flat_completion(&sg)?;
        Ok(hs)
    }

    /// The multiplicative table with zero, elements in [`Self::elements`] order.
    pub fn build_semigroup(&self) -> SemigroupWithZero {
        let n = self.elements.len();
        let mut mul = Vec::with_capacity(n * n);
        for &x in &self.elements {
            for &y in &self.elements {
                let p = self.product(x, y).expect("own elements");
                mul.push(self.index_of(p).expect("products stay inside"));
            }
        }
        SemigroupWithZero {
            labels: self.elements.iter().map(|&e| self.label(e)).collect(),
            mul,
            zero: 0,
        }
    }

    /// Normal form of `x·y`.
    pub fn product(&self, x: HgElement, y: HgElement) -> Result<HgElement, HgError> {
        for e in [x, y] {
            if self.index_of(e).is_none() {
                return Err(HgError::ForeignElement(e));
            }
        }
        use HgElement::*;
        let h = &self.source;
        Ok(match (x, y) {
            (Gen(u), Gen(v)) => {
                if u == v {
                    Zero
                } else if h.edges().iter().any(|e| e.len() == 2 && e.contains(&u) && e.contains(&v)) {
                    Top
                } else {
                    self.classes.class_of(u, v).map_or(Zero, PairClass)
                }
            }
            (Gen(u), PairClass(c)) | (PairClass(c), Gen(u)) => {
                if self.classes.classes()[c].completion == Some(u) {
                    Top
                } else {
                    Zero
                }
            }
            _ => Zero,
        })
    }

    pub fn index_of(&self, e: HgElement) -> Option<usize> {
        let n = self.source.vertex_count();
        match e {
            HgElement::Zero => Some(0),
            HgElement::Gen(v) if v < n => Some(1 + v),
            HgElement::PairClass(c) if c < self.classes.len() => Some(1 + n + c),
            HgElement::Top => Some(self.elements.len() - 1),
            _ => None,
        }
    }

    pub fn label(&self, e: HgElement) -> String {
        let h = &self.source;
        match e {
            HgElement::Zero => "0".into(),
            HgElement::Gen(v) => format!("a·{}", h.vertex_name(v)),
            HgElement::PairClass(c) => {
                let (a, b) = self.classes.classes()[c].representative;
                let (x, y) = (h.vertex_name(a), h.vertex_name(b));
                let (x, y) = if x <= y { (x, y) } else { (y, x) };
                format!("PAIR{{{x},{y}}}")
            }
            HgElement::Top => "TOP".into(),
        }
    }

    pub fn source(&self) -> &Hypergraph {
        &self.source
    }

    pub fn classes(&self) -> &LinkedClasses {
        &self.classes
    }

    pub fn elements(&self) -> &[HgElement] {
        &self.elements
    }

    pub fn semiring(&self) -> &FiniteSemiring {
        &self.semiring
    }

    pub fn into_semiring(self) -> FiniteSemiring {
        self.semiring
    }

    /// Corner cases accepted but worth surfacing in reports.
    pub fn flags(&self) -> &[String] {
        &self.flags
    }

    pub fn gen_index(&self, v: usize) -> usize {
        1 + v
    }

    pub fn top_index(&self) -> usize {
        self.elements.len() - 1
    }

    /// Index of the product of the generators on `vertices`.
    pub fn word_index(&self, vertices: &[usize]) -> usize {
        let s = &self.semiring;
        let mut it = vertices.iter();
        let first = self.gen_index(*it.next().expect("non-empty word"));
        it.fold(first, |acc, &v| s.mul(acc, self.gen_index(v)))
    }
}

impl fmt::Display for HypergraphSemiring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "S_H over {} ({} elements)", self.source, self.elements.len())
    }
}

/// `S_H` as a bare [`FiniteSemiring`].
pub fn build_semiring(h: &Hypergraph) -> Result<HypergraphSemiring, HgError> {
    HypergraphSemiring::build(h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::{family, FamilyKind};
    use HgElement::*;

    fn triangle() -> Hypergraph {
        family(FamilyKind::Beam, 1).unwrap()
    }

    #[test]
    fn triangle_products() {
        let s = HypergraphSemiring::build(&triangle()).unwrap();
        let p12 = s.product(Gen(0), Gen(1)).unwrap();
        let p45 = s.product(Gen(3), Gen(4)).unwrap();
        assert!(matches!(p12, PairClass(_)));
        assert_eq!(p12, p45);
        assert_eq!(s.product(Gen(0), Gen(3)).unwrap(), Zero);
        assert_eq!(s.product(Top, Gen(0)).unwrap(), Zero);
        assert_eq!(s.product(p12, Gen(2)).unwrap(), Top);
        assert_eq!(s.product(Gen(2), p12).unwrap(), Top);
        assert_eq!(s.product(p12, Gen(4)).unwrap(), Zero);
        assert_eq!(s.label(p12), "PAIR{u1,u2}");
        assert_eq!(s.label(Gen(0)), "a·u1");
    }

    #[test]
    fn foreign_elements_rejected() {
        let s = HypergraphSemiring::build(&triangle()).unwrap();
        assert!(matches!(s.product(Gen(99), Gen(0)), Err(HgError::ForeignElement(_))));
        assert!(matches!(s.product(PairClass(6), Gen(0)), Err(HgError::ForeignElement(_))));
    }

    #[test]
    fn sizes() {
        assert_eq!(HypergraphSemiring::build(&triangle()).unwrap().elements().len(), 14);
        let single = Hypergraph::numbered(3, &[&[1, 2, 3]]).unwrap();
        assert_eq!(HypergraphSemiring::build(&single).unwrap().elements().len(), 8);
        let n2 = family(FamilyKind::Nested, 2).unwrap();
        let s = HypergraphSemiring::build(&n2).unwrap();
        assert_eq!(s.classes().pair_count(), 18);
        assert_eq!(s.elements().len(), 2 + 9 + s.classes().len());
        for i in 1..=4 {
            let b = family(FamilyKind::Beam, i).unwrap();
            assert_eq!(HypergraphSemiring::build(&b).unwrap().elements().len(), 6 * i + 8);
        }
    }

    #[test]
    fn invalid_hypergraph_rejected() {
        let h = Hypergraph::numbered(4, &[&[1, 2, 3], &[2, 3, 4]]).unwrap();
        assert!(matches!(HypergraphSemiring::build(&h), Err(HgError::Hypergraph(_))));
    }

    #[test]
    fn table_facts() {
        for h in [
            triangle(),
            family(FamilyKind::Nested, 2).unwrap(),
            family(FamilyKind::NCycle, 5).unwrap(),
            Hypergraph::numbered(5, &[&[1, 2, 3], &[4, 5]]).unwrap(),
        ] {
            let hs = HypergraphSemiring::build(&h).unwrap();
            let s = hs.semiring();
            let n = s.size();
            assert!(s.verify_axioms().all_pass());
            assert!(s.is_flat());
            assert_eq!(s.is_zero_cancellative(), Ok(None));
            for x in 0..n {
                assert_eq!(s.mul(x, x), 0);
                for y in 0..n {
                    assert_eq!(s.mul(x, y), s.mul(y, x));
                }
            }
            let cert = s.subdirect_certificate();
            assert!(cert.granted);
            assert_eq!(cert.annihilators, vec![hs.top_index()]);

            // pair products, triples and longer words against the edge list
            let nv = h.vertex_count();
            for u in 0..nv {
                for v in 0..nv {
                    if u == v {
                        continue;
                    }
                    let p = hs.word_index(&[u, v]);
                    assert_eq!(p != 0, h.is_subhyperedge(&[u, v]));
                    assert_eq!(p == hs.top_index(), h.has_edge(&[u, v]));
                    for w in 0..nv {
                        let t = hs.word_index(&[u, v, w]);
                        assert_eq!(t == hs.top_index(), h.has_edge(&[u, v, w]) && w != u && w != v);
                        assert!(t == 0 || t == hs.top_index());
                        for x in 0..nv.min(6) {
                            assert_eq!(hs.word_index(&[u, v, w, x]), 0);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn single_pair_edge_is_flagged() {
        let h = Hypergraph::numbered(2, &[&[1, 2]]).unwrap();
        let hs = HypergraphSemiring::build(&h).unwrap();
        assert_eq!(hs.elements().len(), 4);
        assert!(!hs.flags().is_empty());
        assert_eq!(hs.semiring().mul(hs.gen_index(0), hs.gen_index(1)), hs.top_index());
        assert!(hs.semiring().subdirect_certificate().granted);
    }
}
