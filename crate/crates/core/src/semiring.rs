//! Finite semirings as explicit Cayley tables.
//!
//! [`FiniteSemiring`] is the exchange format every other module produces or
//! consumes. Element `i` is identified by its index; labels are for humans.

use std::collections::HashMap;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SemiringError {
    #[error("{table} table has {rows} rows, expected {expected}")]
    RowCount { table: &'static str, rows: usize, expected: usize },
    #[error("{table} table row {row} has {len} entries, expected {expected}")]
    Ragged { table: &'static str, row: usize, len: usize, expected: usize },
    #[error("{table} table entry ({row},{col}) = {value} is not an element index")]
    OutOfRange { table: &'static str, row: usize, col: usize, value: usize },
    #[error("zero index {0} is not an element")]
    BadZero(usize),
    #[error("duplicate element label `{0}`")]
    DuplicateLabel(String),
    #[error("no zero element designated")]
    NoZero,
    #[error("semiring has no elements")]
    Empty,
    #[error("flat completion refused: {0}")]
    Completion(String),
    #[error("malformed semiring document: {0}")]
    Format(String),
}

/// On-disk form with row-major tables of element indices.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct SemiringDocument {
    pub elements: Vec<String>,
    pub add: Vec<Vec<usize>>,
    pub mul: Vec<Vec<usize>>,
    pub zero: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteSemiring {
    labels: Vec<String>,
    add: Vec<usize>,
    mul: Vec<usize>,
    zero: Option<usize>,
}

fn flatten_table(table: &'static str, rows: &[Vec<usize>], n: usize) -> Result<Vec<usize>, SemiringError> {
    if rows.len() != n {
        return Err(SemiringError::RowCount { table, rows: rows.len(), expected: n });
    }
    let mut flat = Vec::with_capacity(n * n);
    for (r, row) in rows.iter().enumerate() {
        if row.len() != n {
            return Err(SemiringError::Ragged { table, row: r, len: row.len(), expected: n });
        }
        for (c, &v) in row.iter().enumerate() {
            if v >= n {
                return Err(SemiringError::OutOfRange { table, row: r, col: c, value: v });
            }
            flat.push(v);
        }
    }
    Ok(flat)
}

impl FiniteSemiring {
    /// Builds from nested rows; checks shape only, not the axioms.
    pub fn new(
        labels: Vec<String>,
        add: &[Vec<usize>],
        mul: &[Vec<usize>],
        zero: Option<usize>,
    ) -> Result<Self, SemiringError> {
        let n = labels.len();
        let add = flatten_table("add", add, n)?;
        let mul = flatten_table("mul", mul, n)?;
        Self::from_flat(labels, add, mul, zero)
    }

    /// Builds from row-major tables of length `n*n`.
    pub fn from_flat(
        labels: Vec<String>,
        add: Vec<usize>,
        mul: Vec<usize>,
        zero: Option<usize>,
    ) -> Result<Self, SemiringError> {
        let n = labels.len();
        if n == 0 {
            return Err(SemiringError::Empty);
        }
        let mut seen = HashMap::new();
        for l in &labels {
            if seen.insert(l.as_str(), ()).is_some() {
                return Err(SemiringError::DuplicateLabel(l.clone()));
            }
        }
        for (table, t) in [("add", &add), ("mul", &mul)] {
            if t.len() != n * n {
                return Err(SemiringError::RowCount { table, rows: t.len() / n.max(1), expected: n });
            }
            if let Some(p) = t.iter().position(|&v| v >= n) {
                return Err(SemiringError::OutOfRange { table, row: p / n, col: p % n, value: t[p] });
            }
        }
        if let Some(z) = zero {
            if z >= n {
                return Err(SemiringError::BadZero(z));
            }
        }
        Ok(Self { labels, add, mul, zero })
    }

    /// Builds tables by evaluating the operations on every pair of indices.
    pub fn from_fn(
        labels: Vec<String>,
        zero: Option<usize>,
        add: impl Fn(usize, usize) -> usize,
        mul: impl Fn(usize, usize) -> usize,
    ) -> Result<Self, SemiringError> {
        let n = labels.len();
        let mut a = Vec::with_capacity(n * n);
        let mut m = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                a.push(add(x, y));
                m.push(mul(x, y));
            }
        }
        Self::from_flat(labels, a, m, zero)
    }

    pub fn from_document(doc: &SemiringDocument) -> Result<Self, SemiringError> {
        Self::new(doc.elements.clone(), &doc.add, &doc.mul, doc.zero)
    }

    pub fn from_json(text: &str) -> Result<Self, SemiringError> {
        let doc: SemiringDocument = serde_json::from_str(text).map_err(|e| SemiringError::Format(e.to_string()))?;
        Self::from_document(&doc)
    }

    pub fn to_document(&self) -> SemiringDocument {
        let n = self.size();
        let rows = |t: &[usize]| t.chunks(n).map(<[usize]>::to_vec).collect();
        SemiringDocument {
            elements: self.labels.clone(),
            add: rows(&self.add),
            mul: rows(&self.mul),
            zero: self.zero,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_document()).expect("semiring document serializes")
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.labels.len()
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.labels.len() + b]
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.labels.len() + b]
    }

    pub fn zero(&self) -> Option<usize> {
        self.zero
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn add_table(&self) -> &[usize] {
        &self.add
    }

    pub fn mul_table(&self) -> &[usize] {
        &self.mul
    }

    /// Some element that is absorbing for multiplication.
    pub fn find_multiplicative_zero(&self) -> Option<usize> {
        let n = self.size();
        (0..n).find(|&z| (0..n).all(|x| self.mul(z, x) == z && self.mul(x, z) == z))
    }

    pub fn verify_axioms(&self) -> AxiomReport {
        let n = self.size();
        let triples = |f: &(dyn Fn(usize, usize, usize) -> bool + Sync)| -> Option<Vec<usize>> {
            (0..n).into_par_iter().find_map_first(|a| {
                for b in 0..n {
                    for c in 0..n {
                        if !f(a, b, c) {
                            return Some(vec![a, b, c]);
                        }
                    }
                }
                None
            })
        };
        let pairs = |f: &dyn Fn(usize, usize) -> bool| -> Option<Vec<usize>> {
            (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).find(|&(a, b)| !f(a, b)).map(|(a, b)| vec![a, b])
        };
        let mut checks = vec![
            AxiomCheck::new(Axiom::AddAssociative, triples(&|a, b, c| {
                self.add(self.add(a, b), c) == self.add(a, self.add(b, c))
            })),
            AxiomCheck::new(Axiom::AddCommutative, pairs(&|a, b| self.add(a, b) == self.add(b, a))),
            AxiomCheck::new(
                Axiom::AddIdempotent,
                (0..n).find(|&a| self.add(a, a) != a).map(|a| vec![a]),
            ),
            AxiomCheck::new(Axiom::MulAssociative, triples(&|a, b, c| {
                self.mul(self.mul(a, b), c) == self.mul(a, self.mul(b, c))
            })),
            AxiomCheck::new(Axiom::LeftDistributive, triples(&|a, b, c| {
                self.mul(a, self.add(b, c)) == self.add(self.mul(a, b), self.mul(a, c))
            })),
            AxiomCheck::new(Axiom::RightDistributive, triples(&|a, b, c| {
                self.mul(self.add(a, b), c) == self.add(self.mul(a, c), self.mul(b, c))
            })),
        ];
        if let Some(z) = self.zero {
            checks.push(AxiomCheck::new(
                Axiom::ZeroAbsorbing,
                (0..n).find(|&x| self.mul(z, x) != z || self.mul(x, z) != z).map(|x| vec![x]),
            ));
        }
        AxiomReport { checks }
    }

    /// Height-one semilattice under `+` whose top is the multiplicative zero.
    pub fn is_flat(&self) -> bool {
        let n = self.size();
        if n < 2 {
            return false;
        }
        let Some(z) = self.zero.or_else(|| self.find_multiplicative_zero()) else {
            return false;
        };
        if (0..n).any(|x| self.mul(z, x) != z || self.mul(x, z) != z) {
            return false;
        }
        (0..n).all(|a| (0..n).all(|b| self.add(a, b) == if a == b { a } else { z }))
    }

    /// First violation of `ab = ac ≠ 0 ⇒ b = c` (left) or its mirror.
    pub fn is_zero_cancellative(&self) -> Result<Option<CancellationFailure>, SemiringError> {
        let z = self.zero.ok_or(SemiringError::NoZero)?;
        Ok(cancellation_failure(self.size(), z, |a, b| self.mul(a, b)))
    }

    pub fn multiplicative_reduct(&self) -> Result<SemigroupWithZero, SemiringError> {
        let z = self.zero.ok_or(SemiringError::NoZero)?;
        Ok(SemigroupWithZero {
            labels: self.labels.clone(),
            mul: self.mul.clone(),
            zero: z,
        })
    }

    pub fn subdirect_certificate(&self) -> SubdirectCertificate {
        let n = self.size();
        let flat = self.is_flat();
        let z = self.zero.or_else(|| self.find_multiplicative_zero());
        let (two_nil, annihilators) = match z {
            Some(z) => (
                (0..n).all(|x| self.mul(x, x) == z),
                (0..n)
                    .filter(|&s| s != z && (0..n).all(|x| self.mul(s, x) == z && self.mul(x, s) == z))
                    .collect::<Vec<_>>(),
            ),
            None => (false, Vec::new()),
        };
        SubdirectCertificate {
            granted: flat && two_nil && annihilators.len() == 1,
            flat,
            two_nil,
            annihilators,
        }
    }

    /// Copy with tables permuted so that new element `i` is old `order[i]`.
    pub fn reordered(&self, order: &[usize]) -> FiniteSemiring {
        let n = self.size();
        let mut inv = vec![0; n];
        for (new, &old) in order.iter().enumerate() {
            inv[old] = new;
        }
        FiniteSemiring::from_fn(
            order.iter().map(|&o| self.labels[o].clone()).collect(),
            self.zero.map(|z| inv[z]),
            |a, b| inv[self.add(order[a], order[b])],
            |a, b| inv[self.mul(order[a], order[b])],
        )
        .expect("permutation preserves table shape")
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self, SemiringError> {
        assert_eq!(labels.len(), self.size(), "label count must match size");
        self.labels = labels;
        Self::from_flat(self.labels, self.add, self.mul, self.zero)
    }
}

impl fmt::Display for FiniteSemiring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.size();
        let w = self.labels.iter().map(|l| l.chars().count()).max().unwrap_or(1);
        for (name, op) in [("+", &self.add), ("·", &self.mul)] {
            write!(f, "{name:>w$} |")?;
            for l in &self.labels {
                write!(f, " {l:>w$}")?;
            }
            writeln!(f)?;
            for a in 0..n {
                write!(f, "{:>w$} |", self.labels[a])?;
                for b in 0..n {
                    write!(f, " {:>w$}", self.labels[op[a * n + b]])?;
                }
                writeln!(f)?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Axiom {
    AddAssociative,
    AddCommutative,
    AddIdempotent,
    MulAssociative,
    LeftDistributive,
    RightDistributive,
    ZeroAbsorbing,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomCheck {
    pub axiom: Axiom,
    /// Element indices of the first failing instance.
    pub counterexample: Option<Vec<usize>>,
}

impl AxiomCheck {
    fn new(axiom: Axiom, counterexample: Option<Vec<usize>>) -> Self {
        Self { axiom, counterexample }
    }

    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub checks: Vec<AxiomCheck>,
}

impl AxiomReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(AxiomCheck::passed)
    }

    pub fn check(&self, axiom: Axiom) -> Option<&AxiomCheck> {
        self.checks.iter().find(|c| c.axiom == axiom)
    }

    pub fn failures(&self) -> impl Iterator<Item = &AxiomCheck> {
        self.checks.iter().filter(|c| !c.passed())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Left,
    Right,
}

/// `a·b = a·c ≠ 0` with `b ≠ c` (left), or `b·a = c·a ≠ 0` (right).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CancellationFailure {
    pub side: Side,
    pub a: usize,
    pub b: usize,
    pub c: usize,
}

fn cancellation_failure(n: usize, z: usize, mul: impl Fn(usize, usize) -> usize) -> Option<CancellationFailure> {
    for a in 0..n {
        for b in 0..n {
            for c in b + 1..n {
                let (l1, l2) = (mul(a, b), mul(a, c));
                if l1 == l2 && l1 != z {
                    return Some(CancellationFailure { side: Side::Left, a, b, c });
                }
                let (r1, r2) = (mul(b, a), mul(c, a));
                if r1 == r2 && r1 != z {
                    return Some(CancellationFailure { side: Side::Right, a, b, c });
                }
            }
        }
    }
    None
}

/// A multiplication table with a designated zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemigroupWithZero {
    pub labels: Vec<String>,
    /// Row-major, `n*n`.
    pub mul: Vec<usize>,
    pub zero: usize,
}

impl SemigroupWithZero {
    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.labels.len() + b]
    }

    pub fn is_commutative(&self) -> bool {
        let n = self.size();
        (0..n).all(|a| (0..n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn associativity_failure(&self) -> Option<(usize, usize, usize)> {
        let n = self.size();
        (0..n).into_par_iter().find_map_first(|a| {
            for b in 0..n {
                let ab = self.mul(a, b);
                for c in 0..n {
                    if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                        return Some((a, b, c));
                    }
                }
            }
            None
        })
    }

    pub fn zero_cancellation_failure(&self) -> Option<CancellationFailure> {
        cancellation_failure(self.size(), self.zero, |a, b| self.mul(a, b))
    }
}

/// The flat semiring on a 0-cancellative semigroup with zero: `x+x = x`,
/// every other sum is 0.
pub fn flat_completion(sg: &SemigroupWithZero) -> Result<FiniteSemiring, SemiringError> {
    let n = sg.size();
    if n == 0 || sg.mul.len() != n * n || sg.zero >= n {
        return Err(SemiringError::Completion("table shape does not match labels".into()));
    }
    if let Some((a, b, c)) = sg.associativity_failure() {
        return Err(SemiringError::Completion(format!(
            "associativity fails at ({}, {}, {})",
            sg.labels[a], sg.labels[b], sg.labels[c]
        )));
    }
    let z = sg.zero;
    if let Some(x) = (0..n).find(|&x| sg.mul(z, x) != z || sg.mul(x, z) != z) {
        return Err(SemiringError::Completion(format!("zero does not absorb {}", sg.labels[x])));
    }
    if let Some(f) = sg.zero_cancellation_failure() {
        return Err(SemiringError::Completion(format!(
            "{:?} 0-cancellation fails: a={}, b={}, c={}",
            f.side, sg.labels[f.a], sg.labels[f.b], sg.labels[f.c]
        )));
    }
    FiniteSemiring::from_fn(
        sg.labels.clone(),
        Some(z),
        |a, b| if a == b { a } else { z },
        |a, b| sg.mul(a, b),
    )
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubdirectCertificate {
    pub flat: bool,
    pub two_nil: bool,
    pub annihilators: Vec<usize>,
    pub granted: bool,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::{build_sc, builtin_s7, CommutativeWord};

    fn sc(words: &[&str]) -> FiniteSemiring {
        let ws: Vec<CommutativeWord> = words.iter().map(|w| w.parse().unwrap()).collect();
        build_sc(&ws).unwrap()
    }

    #[test]
    fn s7_axioms_hold() {
        let s7 = builtin_s7();
        let r = s7.verify_axioms();
        assert!(r.all_pass(), "{r:?}");
    }

    #[test]
    fn corrupted_cell_is_caught() {
        let s7 = builtin_s7();
        let (one, a) = (s7.index_of("1").unwrap(), s7.index_of("a").unwrap());
        let mut doc = s7.to_document();
        doc.mul[one][one] = a;
        let bad = FiniteSemiring::from_document(&doc).unwrap();
        let r = bad.verify_axioms();
        assert!(!r.all_pass());
        let assoc = r.check(Axiom::MulAssociative).unwrap();
        let ce = assoc.counterexample.clone().expect("associativity breaks");
        let (x, y, z) = (ce[0], ce[1], ce[2]);
        assert_ne!(bad.mul(bad.mul(x, y), z), bad.mul(x, bad.mul(y, z)));
    }

    #[test]
    fn one_element_semiring() {
        let t = FiniteSemiring::new(vec!["0".into()], &[vec![0]], &[vec![0]], Some(0)).unwrap();
        assert!(t.verify_axioms().all_pass());
        assert!(!t.is_flat());
    }

    #[test]
    fn structural_errors() {
        let labels = vec!["0".to_string(), "a".to_string()];
        assert!(matches!(
            FiniteSemiring::new(labels.clone(), &[vec![0, 0], vec![0]], &[vec![0, 0], vec![0, 0]], None),
            Err(SemiringError::Ragged { .. })
        ));
        assert!(matches!(
            FiniteSemiring::new(labels.clone(), &[vec![0, 0]], &[vec![0, 0], vec![0, 0]], None),
            Err(SemiringError::RowCount { .. })
        ));
        assert!(matches!(
            FiniteSemiring::new(labels, &[vec![0, 2], vec![0, 0]], &[vec![0, 0], vec![0, 0]], None),
            Err(SemiringError::OutOfRange { .. })
        ));
    }

    #[test]
    fn flatness() {
        assert!(sc(&["abc"]).is_flat());
        // 1+a = 0 and every element is idempotent, so the addition is flat
        assert!(builtin_s7().is_flat());
        let mut doc = builtin_s7().to_document();
        doc.add[0][1] = 0;
        doc.add[1][0] = 0;
        assert!(!FiniteSemiring::from_document(&doc).unwrap().is_flat());
    }

    #[test]
    fn s7_is_zero_cancellative() {
        assert_eq!(builtin_s7().is_zero_cancellative(), Ok(None));
    }

    #[test]
    fn injected_cancellation_failure() {
        let s = sc(&["abc"]);
        let mut doc = s.to_document();
        let (a, c, ab) = (s.index_of("a").unwrap(), s.index_of("c").unwrap(), s.index_of("ab").unwrap());
        doc.mul[a][c] = ab;
        let bad = FiniteSemiring::from_document(&doc).unwrap();
        let f = bad.is_zero_cancellative().unwrap().expect("a·b = a·c now");
        let (l, r) = match f.side {
            Side::Left => (bad.mul(f.a, f.b), bad.mul(f.a, f.c)),
            Side::Right => (bad.mul(f.b, f.a), bad.mul(f.c, f.a)),
        };
        assert_eq!(l, r);
        assert_ne!(f.b, f.c);
        let sg = bad.multiplicative_reduct().unwrap();
        assert!(matches!(flat_completion(&sg), Err(SemiringError::Completion(_))));
    }

    #[test]
    fn zero_required_for_cancellation() {
        let s = FiniteSemiring::new(vec!["x".into()], &[vec![0]], &[vec![0]], None).unwrap();
        assert_eq!(s.is_zero_cancellative(), Err(SemiringError::NoZero));
    }

    #[test]
    fn completion_of_reduct_is_identity_on_flat() {
        for words in [&["abc"][..], &["abcd"], &["aab", "bc"]] {
            let s = sc(words);
            let back = flat_completion(&s.multiplicative_reduct().unwrap()).unwrap();
            assert_eq!(back, s);
            assert!(back.verify_axioms().all_pass());
        }
    }

    #[test]
    fn abcd_certificate() {
        let s = sc(&["abcd"]);
        let cert = s.subdirect_certificate();
        assert!(cert.flat);
        assert!(cert.two_nil);
        assert_eq!(cert.annihilators, vec![s.index_of("abcd").unwrap()]);
        assert!(cert.granted);
        let s7 = builtin_s7().subdirect_certificate();
        assert!(s7.flat && !s7.two_nil && !s7.granted);
    }

    #[test]
    fn document_round_trip_and_reorder() {
        let s = sc(&["abc"]);
        assert_eq!(FiniteSemiring::from_json(&s.to_json()).unwrap(), s);
        let order: Vec<usize> = (0..s.size()).rev().collect();
        let r = s.reordered(&order);
        assert!(r.verify_axioms().all_pass());
        assert!(r.is_flat());
        assert_eq!(r.label(0), s.label(s.size() - 1));
        assert_eq!(r.reordered(&order), s);
    }
}
