//! Semiring terms and identities: parsing, evaluation, and two decision
//! procedures (exhaustive, and a propagation search for flat semirings).

mod check;
mod parse;
mod registry;

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::semiring::FiniteSemiring;

pub use check::{check_identity_bruteforce, check_identity_flat, CheckConfig, CheckResult, Method, Verdict};
pub use parse::parse_identity;
pub use registry::{builtin_identity, nested_identity, BUILTIN_NAMES};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TermError {
    #[error("syntax error at column {column}: {message}")]
    Syntax { column: usize, message: String },
    #[error("unbound variable `{0}`")]
    Unbound(String),
    #[error("brute force needs {needed} evaluations, budget is {budget}; use the flat checker")]
    BudgetExceeded { needed: String, budget: u64 },
    #[error("semiring is not flat; use the brute-force checker")]
    NotFlat,
    #[error("expansion into monomials exceeds {0} terms")]
    TooManyMonomials(usize),
    #[error("unknown identity `{0}`")]
    UnknownIdentity(String),
}

/// Variables are indices into the owning [`Identity`]'s variable list.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Term {
    Var(usize),
    Product(Vec<Term>),
    Sum(Vec<Term>),
}

impl Term {
    /// Flattens nested sums into sums and nested products into products.
    pub fn normalized(self) -> Term {
        match self {
            Term::Var(v) => Term::Var(v),
            Term::Sum(ts) => flatten(ts, true),
            Term::Product(ts) => flatten(ts, false),
        }
    }

    pub fn variables(&self, out: &mut BTreeSet<usize>) {
        match self {
            Term::Var(v) => {
                out.insert(*v);
            }
            Term::Product(ts) | Term::Sum(ts) => ts.iter().for_each(|t| t.variables(out)),
        }
    }

    /// Table fold under a total assignment (indexed by variable).
    pub fn eval(&self, s: &FiniteSemiring, a: &[usize]) -> usize {
        match self {
            Term::Var(v) => a[*v],
            Term::Product(ts) => {
                let mut it = ts.iter();
                let first = it.next().expect("normalized product").eval(s, a);
                it.fold(first, |acc, t| s.mul(acc, t.eval(s, a)))
            }
            Term::Sum(ts) => {
                let mut it = ts.iter();
                let first = it.next().expect("normalized sum").eval(s, a);
                it.fold(first, |acc, t| s.add(acc, t.eval(s, a)))
            }
        }
    }

    /// Distributes products over sums into a sum of ordered monomials,
    /// dropping duplicates.
    pub fn monomials(&self, cap: usize) -> Result<Vec<Vec<usize>>, TermError> {
        let raw = self.expand(cap)?;
        let mut seen = BTreeSet::new();
        Ok(raw.into_iter().filter(|m| seen.insert(m.clone())).collect())
    }

    fn expand(&self, cap: usize) -> Result<Vec<Vec<usize>>, TermError> {
        match self {
            Term::Var(v) => Ok(vec![vec![*v]]),
            Term::Sum(ts) => {
                let mut out = Vec::new();
                for t in ts {
                    out.extend(t.expand(cap)?);
                    if out.len() > cap {
                        return Err(TermError::TooManyMonomials(cap));
                    }
                }
                Ok(out)
            }
            Term::Product(ts) => {
                let mut acc: Vec<Vec<usize>> = vec![vec![]];
                for t in ts {
                    let part = t.expand(cap)?;
                    if acc.len().saturating_mul(part.len()) > cap {
                        return Err(TermError::TooManyMonomials(cap));
                    }
                    acc = acc
                        .iter()
                        .flat_map(|m| {
                            part.iter().map(move |p| {
                                let mut q = m.clone();
                                q.extend_from_slice(p);
                                q
                            })
                        })
                        .collect();
                }
                Ok(acc)
            }
        }
    }

    fn fmt_with(&self, names: &[String], f: &mut fmt::Formatter<'_>, in_product: bool) -> fmt::Result {
        match self {
            Term::Var(v) => f.write_str(&names[*v]),
            Term::Product(ts) => {
                for (i, t) in ts.iter().enumerate() {
                    if i > 0 {
                        f.write_str("*")?;
                    }
                    t.fmt_with(names, f, true)?;
                }
                Ok(())
            }
            Term::Sum(ts) => {
                if in_product {
                    f.write_str("(")?;
                }
                for (i, t) in ts.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" + ")?;
                    }
                    t.fmt_with(names, f, false)?;
                }
                if in_product {
                    f.write_str(")")?;
                }
                Ok(())
            }
        }
    }
}

fn flatten(ts: Vec<Term>, sum: bool) -> Term {
    let mut out = Vec::with_capacity(ts.len());
    for t in ts {
        match t.normalized() {
            Term::Sum(inner) if sum => out.extend(inner),
            Term::Product(inner) if !sum => out.extend(inner),
            other => out.push(other),
        }
    }
    if out.len() == 1 {
        out.pop().expect("one child")
    } else if sum {
        Term::Sum(out)
    } else {
        Term::Product(out)
    }
}

/// Orders `x2` before `x10`: letter runs compare as text, digit runs as numbers.
pub fn natural_cmp(a: &str, b: &str) -> Ordering {
    fn chunks(s: &str) -> Vec<(bool, &str)> {
        let mut out = Vec::new();
        let bytes = s.as_bytes();
        let mut start = 0;
        for i in 1..=bytes.len() {
            if i == bytes.len() || bytes[i].is_ascii_digit() != bytes[start].is_ascii_digit() {
                out.push((bytes[start].is_ascii_digit(), &s[start..i]));
                start = i;
            }
        }
        out
    }
    let (ca, cb) = (chunks(a), chunks(b));
    for (x, y) in ca.iter().zip(&cb) {
        let ord = match (x.0, y.0) {
            (true, true) => {
                let (tx, ty) = (x.1.trim_start_matches('0'), y.1.trim_start_matches('0'));
                tx.len().cmp(&ty.len()).then_with(|| tx.cmp(ty)).then_with(|| x.1.len().cmp(&y.1.len()))
            }
            _ => x.1.cmp(y.1),
        };
        if ord != Ordering::Equal {
            return ord;
        }
    }
    ca.len().cmp(&cb.len())
}

/// `lhs ≈ rhs` over the listed variables, in natural order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Identity {
    pub lhs: Term,
    pub rhs: Term,
    pub variables: Vec<String>,
}

impl Identity {
    pub fn var_count(&self) -> usize {
        self.variables.len()
    }

    pub fn variable_index(&self, name: &str) -> Option<usize> {
        self.variables.iter().position(|v| v == name)
    }

    /// Evaluates both sides under a total assignment by variable index.
    pub fn eval_sides(&self, s: &FiniteSemiring, a: &[usize]) -> (usize, usize) {
        (self.lhs.eval(s, a), self.rhs.eval(s, a))
    }

    /// Evaluates a side under an assignment given by variable name.
    pub fn eval_named(&self, side: &Term, s: &FiniteSemiring, a: &[(&str, usize)]) -> Result<usize, TermError> {
        let mut vals = vec![usize::MAX; self.variables.len()];
        for &(name, v) in a {
            if let Some(i) = self.variable_index(name) {
                vals[i] = v;
            }
        }
        let mut used = BTreeSet::new();
        side.variables(&mut used);
        if let Some(&missing) = used.iter().find(|&&i| vals[i] == usize::MAX) {
            return Err(TermError::Unbound(self.variables[missing].clone()));
        }
        Ok(side.eval(s, &vals))
    }

    pub fn display_term(&self, t: &Term) -> String {
        struct D<'a>(&'a Term, &'a [String]);
        impl fmt::Display for D<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                self.0.fmt_with(self.1, f, false)
            }
        }
        D(t, &self.variables).to_string()
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.display_term(&self.lhs), self.display_term(&self.rhs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hg_semiring::HypergraphSemiring;
    use crate::hypergraph::{family, FamilyKind};

    #[test]
    fn natural_order() {
        let mut v = vec!["x10", "y1", "x2", "x1", "x", "a3b"];
        v.sort_by(|a, b| natural_cmp(a, b));
        assert_eq!(v, vec!["a3b", "x", "x1", "x2", "x10", "y1"]);
    }

    #[test]
    fn eval_on_triangle_with_generator_witness() {
        let id = builtin_identity("eq3.1").unwrap();
        let hs = HypergraphSemiring::build(&family(FamilyKind::Beam, 1).unwrap()).unwrap();
        let a: Vec<usize> = (0..6).map(|v| hs.gen_index(v)).collect();
        let (l, r) = id.eval_sides(hs.semiring(), &a);
        assert_eq!(l, hs.top_index());
        assert_eq!(r, 0);
    }

    #[test]
    fn all_zero_assignment_in_flat_semiring() {
        let id = builtin_identity("eq4.3").unwrap();
        let hs = HypergraphSemiring::build(&family(FamilyKind::Nested, 2).unwrap()).unwrap();
        let zeros = vec![0; id.var_count()];
        assert_eq!(id.eval_sides(hs.semiring(), &zeros), (0, 0));
    }

    #[test]
    fn unbound_variable() {
        let id = parse_identity("x*y = y").unwrap();
        let s = crate::words::builtin_s7();
        assert_eq!(id.eval_named(&id.lhs, &s, &[("x", 0)]), Err(TermError::Unbound("y".into())));
        assert_eq!(id.eval_named(&id.lhs, &s, &[("x", 0), ("y", 1)]), Ok(1));
    }

    #[test]
    fn monomial_expansion() {
        let id = parse_identity("(x1+x4)*(x2+x5)*(x3+x6) = x1").unwrap();
        let m = id.lhs.monomials(1000).unwrap();
        assert_eq!(m.len(), 8);
        assert_eq!(m[0], vec![0, 1, 2]);
        assert!(matches!(id.lhs.monomials(4), Err(TermError::TooManyMonomials(4))));
        let dup = parse_identity("x*y + x*y = x").unwrap();
        assert_eq!(dup.lhs.monomials(10).unwrap().len(), 1);
    }
}
