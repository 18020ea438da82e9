use rayon::prelude::*;
use serde::Serialize;

use super::{Identity, Term, TermError};
use crate::semiring::FiniteSemiring;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CheckConfig {
    /// Largest `|S|^vars` the exhaustive checker accepts.
    pub budget_evals: u64,
    pub workers: usize,
    pub monomial_cap: usize,
}

impl Default for CheckConfig {
    fn default() -> Self {
        Self {
            budget_evals: 10_000_000,
            workers: 1,
            monomial_cap: 100_000,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Holds,
    Fails,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    BruteForce,
    Flat,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckResult {
    pub verdict: Verdict,
    pub method: Method,
    /// Element index per variable.
    pub counterexample: Option<Vec<usize>>,
    /// Side values under the counterexample.
    pub sides: Option<(usize, usize)>,
    /// Assignments evaluated (brute force) or search nodes visited (flat).
    pub nodes: u64,
}

impl CheckResult {
    pub fn holds(&self) -> bool {
        self.verdict == Verdict::Holds
    }

    /// `(variable, element label)` pairs of the counterexample.
    pub fn named_counterexample(&self, id: &Identity, s: &FiniteSemiring) -> Option<Vec<(String, String)>> {
        self.counterexample.as_ref().map(|a| {
            id.variables
                .iter()
                .zip(a)
                .map(|(v, &e)| (v.clone(), s.label(e).to_string()))
                .collect()
        })
    }

    fn fails(method: Method, id: &Identity, s: &FiniteSemiring, a: Vec<usize>, nodes: u64) -> Self {
        let sides = id.eval_sides(s, &a);
        assert_ne!(sides.0, sides.1, "reported counterexample must separate the sides");
        Self {
            verdict: Verdict::Fails,
            method,
            counterexample: Some(a),
            sides: Some(sides),
            nodes,
        }
    }
}

fn with_workers<T: Send>(workers: usize, f: impl FnOnce() -> T + Send) -> T {
    if workers <= 1 {
        return f();
    }
    match rayon::ThreadPoolBuilder::new().num_threads(workers).build() {
        Ok(pool) => pool.install(f),
        Err(e) => {
            log::warn!("could not start {workers} workers ({e}); running on the global pool");
            f()
        }
    }
}

/// Tries every assignment in lexicographic order (first variable most
/// significant) and reports the first separating one.
pub fn check_identity_bruteforce(s: &FiniteSemiring, id: &Identity, cfg: &CheckConfig) -> Result<CheckResult, TermError> {
    let n = s.size() as u64;
    let k = id.var_count() as u32;
    let total = n.checked_pow(k).filter(|&t| t <= cfg.budget_evals).ok_or_else(|| TermError::BudgetExceeded {
        needed: n
            .checked_pow(k)
            .map_or_else(|| format!("{}^{}", n, k), |t| t.to_string()),
        budget: cfg.budget_evals,
    })?;
    let size = s.size();
    let k = k as usize;
    let block = total / n;

    // Scans all assignments whose first variable is `first`.
    let scan = |first: usize| -> Option<(u64, Vec<usize>)> {
        let mut a = vec![0usize; k];
        a[0] = first;
        let mut rank = first as u64 * block;
        loop {
            let (l, r) = id.eval_sides(s, &a);
            if l != r {
                return Some((rank, a));
            }
            rank += 1;
            let mut i = k;
            loop {
                if i == 1 {
                    return None;
                }
                i -= 1;
                a[i] += 1;
                if a[i] < size {
                    break;
                }
                a[i] = 0;
            }
        }
    };

    let found = if k == 0 {
        None
    } else if cfg.workers > 1 {
        with_workers(cfg.workers, || (0..size).into_par_iter().find_map_first(scan))
    } else {
        (0..size).find_map(scan)
    };
    Ok(match found {
        Some((rank, a)) => CheckResult::fails(Method::BruteForce, id, s, a, rank + 1),
        None => CheckResult {
            verdict: Verdict::Holds,
            method: Method::BruteForce,
            counterexample: None,
            sides: None,
            nodes: total,
        },
    })
}

const UNSET: usize = usize::MAX;

/// Search constrained so that every monomial of one side takes a common
/// non-zero value.
struct SideSearch<'a> {
    s: &'a FiniteSemiring,
    zero: usize,
    commutative: bool,
    monos: Vec<Vec<usize>>,
    order: Vec<usize>,
    watch: Vec<Vec<usize>>,
    nonzero: Vec<usize>,
    nodes: u64,
}

impl<'a> SideSearch<'a> {
    fn new(s: &'a FiniteSemiring, zero: usize, commutative: bool, monos: Vec<Vec<usize>>, nvars: usize) -> Self {
        let mut occ = vec![0usize; nvars];
        let mut watch = vec![Vec::new(); nvars];
        for (mi, m) in monos.iter().enumerate() {
            for &v in m {
                occ[v] += 1;
                if watch[v].last() != Some(&mi) {
                    watch[v].push(mi);
                }
            }
        }
        // most occurrences first; ties go to the variable sharing the most
        // monomials with those already placed
        let mut order = Vec::new();
        let mut placed = vec![false; nvars];
        let mut remaining: Vec<usize> = (0..nvars).filter(|&v| occ[v] > 0).collect();
        while !remaining.is_empty() {
            let (pos, _) = remaining
                .iter()
                .enumerate()
                .max_by_key(|&(_, &v)| {
                    let shared = watch[v]
                        .iter()
                        .filter(|&&mi| monos[mi].iter().any(|&w| placed[w]))
                        .count();
                    (occ[v], shared, std::cmp::Reverse(v))
                })
                .expect("non-empty");
            let v = remaining.remove(pos);
            placed[v] = true;
            order.push(v);
        }
        let nonzero = (0..s.size()).filter(|&e| e != zero).collect();
        Self { s, zero, commutative, monos, order, watch, nonzero, nodes: 0 }
    }

    /// Product of the assigned positions is 0 (commutative), or some maximal
    /// run of assigned positions multiplies to 0.
    fn dead(&self, m: &[usize], a: &[usize]) -> bool {
        let s = self.s;
        if self.commutative {
            let mut acc = UNSET;
            for &v in m {
                if a[v] != UNSET {
                    acc = if acc == UNSET { a[v] } else { s.mul(acc, a[v]) };
                    if acc == self.zero {
                        return true;
                    }
                }
            }
            return false;
        }
        let mut acc = UNSET;
        for &v in m {
            if a[v] == UNSET {
                acc = UNSET;
            } else {
                acc = if acc == UNSET { a[v] } else { s.mul(acc, a[v]) };
                if acc == self.zero {
                    return true;
                }
            }
        }
        false
    }

    fn value(&self, m: &[usize], a: &[usize]) -> Option<usize> {
        let mut acc = UNSET;
        for &v in m {
            if a[v] == UNSET {
                return None;
            }
            acc = if acc == UNSET { a[v] } else { self.s.mul(acc, a[v]) };
        }
        Some(acc)
    }

    fn run(&mut self, a: &mut Vec<usize>, leaf: &mut dyn FnMut(&[usize], usize) -> bool) -> bool {
        self.descend(0, None, a, leaf)
    }

    fn descend(
        &mut self,
        depth: usize,
        common: Option<usize>,
        a: &mut Vec<usize>,
        leaf: &mut dyn FnMut(&[usize], usize) -> bool,
    ) -> bool {
        self.nodes += 1;
        if depth == self.order.len() {
            let v = common.expect("every monomial is fully assigned at a leaf");
            return leaf(a, v);
        }
        let x = self.order[depth];
        for vi in 0..self.nonzero.len() {
            a[x] = self.nonzero[vi];
            let mut c = common;
            let mut ok = true;
            for &mi in &self.watch[x] {
                let m = &self.monos[mi];
                if self.dead(m, a) {
                    ok = false;
                    break;
                }
                if let Some(val) = self.value(m, a) {
                    match c {
                        None => c = Some(val),
                        Some(cv) if cv != val => {
                            ok = false;
                            break;
                        }
                        _ => {}
                    }
                }
            }
            if ok && self.descend(depth + 1, c, a, leaf) {
                a[x] = UNSET;
                return true;
            }
        }
        a[x] = UNSET;
        false
    }
}

/// Decides an identity in a flat semiring without enumerating every
/// assignment.
///
/// A sum is non-zero exactly when all its summands share one non-zero value,
/// so a separating assignment makes at least one side's monomials agree on a
/// non-zero value. Each side is searched under that constraint and the other
/// side is compared at every solution.
pub fn check_identity_flat(s: &FiniteSemiring, id: &Identity, cfg: &CheckConfig) -> Result<CheckResult, TermError> {
    if !s.is_flat() {
        return Err(TermError::NotFlat);
    }
    let zero = s.zero().or_else(|| s.find_multiplicative_zero()).ok_or(TermError::NotFlat)?;
    let n = s.size();
    let commutative = (0..n).all(|x| (0..n).all(|y| s.mul(x, y) == s.mul(y, x)));
    let nvars = id.var_count();
    let mut nodes = 0;
    for (this, other) in [(&id.lhs, &id.rhs), (&id.rhs, &id.lhs)] {
        let monos = this.monomials(cfg.monomial_cap)?;
        let mut in_this = vec![false; nvars];
        monos.iter().flatten().for_each(|&v| in_this[v] = true);
        let mut other_vars = std::collections::BTreeSet::new();
        other.variables(&mut other_vars);
        let other_free = other_vars.iter().any(|&v| !in_this[v]);

        let mut search = SideSearch::new(s, zero, commutative, monos, nvars);
        let mut a = vec![UNSET; nvars];
        let mut found: Option<Vec<usize>> = None;
        let mut leaf = |a: &[usize], v: usize| -> bool {
            let mut full: Vec<usize> = a.iter().map(|&x| if x == UNSET { zero } else { x }).collect();
            if other_free {
                // any variable outside this side at 0 forces the other side to 0
                found = Some(std::mem::take(&mut full));
                return true;
            }
            if eval_other(other, s, &full) != v {
                found = Some(full);
                return true;
            }
            false
        };
        let hit = search.run(&mut a, &mut leaf);
        nodes += search.nodes;
        if hit {
            let a = found.expect("leaf recorded the assignment");
            return Ok(CheckResult::fails(Method::Flat, id, s, a, nodes));
        }
    }
    Ok(CheckResult {
        verdict: Verdict::Holds,
        method: Method::Flat,
        counterexample: None,
        sides: None,
        nodes,
    })
}

fn eval_other(t: &Term, s: &FiniteSemiring, a: &[usize]) -> usize {
    t.eval(s, a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hg_semiring::HypergraphSemiring;
    use crate::hypergraph::{family, FamilyKind, Hypergraph};
    use crate::terms::{builtin_identity, parse_identity};
    use crate::words::{build_sc_from_str, builtin_s7};

    fn cfg() -> CheckConfig {
        CheckConfig::default()
    }

    fn sh(kind: FamilyKind, i: usize) -> FiniteSemiring {
        HypergraphSemiring::build(&family(kind, i).unwrap()).unwrap().into_semiring()
    }

    #[test]
    fn trivial_identity_holds() {
        let id = parse_identity("x1 = x1").unwrap();
        for s in [builtin_s7(), build_sc_from_str("abc").unwrap()] {
            assert!(check_identity_bruteforce(&s, &id, &cfg()).unwrap().holds());
            assert!(check_identity_flat(&s, &id, &cfg()).unwrap().holds());
        }
    }

    #[test]
    fn sc_abc_satisfies_triangle_identity() {
        let s = build_sc_from_str("abc").unwrap();
        let id = builtin_identity("eq3.1").unwrap();
        let r = check_identity_bruteforce(&s, &id, &cfg()).unwrap();
        assert!(r.holds());
        assert_eq!(r.nodes, 8u64.pow(6));
        assert!(check_identity_flat(&s, &id, &cfg()).unwrap().holds());
    }

    #[test]
    fn triangle_fails_triangle_identity() {
        let s = sh(FamilyKind::Beam, 1);
        let id = builtin_identity("eq3.1").unwrap();
        let r = check_identity_flat(&s, &id, &cfg()).unwrap();
        assert_eq!(r.verdict, Verdict::Fails);
        let b = check_identity_bruteforce(&s, &id, &cfg()).unwrap();
        assert_eq!(b.verdict, Verdict::Fails);
    }

    #[test]
    fn s7_separations() {
        let s7 = builtin_s7();
        assert!(check_identity_bruteforce(&s7, &builtin_identity("eq4.2").unwrap(), &cfg()).unwrap().holds());
        let r = check_identity_bruteforce(&s7, &builtin_identity("eq4.4").unwrap(), &cfg()).unwrap();
        assert_eq!(r.verdict, Verdict::Fails);
        let named = r.named_counterexample(&builtin_identity("eq4.4").unwrap(), &s7).unwrap();
        assert_eq!(named.len(), 8);
    }

    #[test]
    fn budget_refusal() {
        let s = sh(FamilyKind::Nested, 2);
        let id = builtin_identity("eq4.2").unwrap();
        assert!(matches!(
            check_identity_bruteforce(&s, &id, &cfg()),
            Err(TermError::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn flat_checker_refuses_non_flat() {
        let mut doc = builtin_s7().to_document();
        doc.add[0][1] = 0;
        doc.add[1][0] = 0;
        let s = FiniteSemiring::from_document(&doc).unwrap();
        assert_eq!(check_identity_flat(&s, &parse_identity("x = x").unwrap(), &cfg()), Err(TermError::NotFlat));
    }

    #[test]
    fn nested_chain_first_step() {
        let id = builtin_identity("eq4.2").unwrap();
        assert!(check_identity_flat(&sh(FamilyKind::Nested, 1), &id, &cfg()).unwrap().holds());
        let r = check_identity_flat(&sh(FamilyKind::Nested, 2), &id, &cfg()).unwrap();
        assert_eq!(r.verdict, Verdict::Fails);
    }

    #[test]
    fn one_sided_variables_force_counterexamples() {
        // y only on the right: any non-zero left value separates once y = 0
        let s = build_sc_from_str("abc").unwrap();
        let id = parse_identity("x = x + y").unwrap();
        let r = check_identity_flat(&s, &id, &cfg()).unwrap();
        assert_eq!(r.verdict, Verdict::Fails);
        assert_eq!(check_identity_bruteforce(&s, &id, &cfg()).unwrap().verdict, Verdict::Fails);
    }

    #[test]
    fn parallel_bruteforce_matches_sequential() {
        let s = HypergraphSemiring::build(&Hypergraph::numbered(3, &[&[1, 2, 3]]).unwrap()).unwrap().into_semiring();
        for text in ["x*y*z = z*y*x", "x*y + y*z = x*z + y*x", "x*x = y*y"] {
            let id = parse_identity(text).unwrap();
            let seq = check_identity_bruteforce(&s, &id, &cfg()).unwrap();
            let par = check_identity_bruteforce(&s, &id, &CheckConfig { workers: 4, ..cfg() }).unwrap();
            assert_eq!(seq, par, "{text}");
        }
    }

    #[test]
    fn non_commutative_flat_semiring() {
        // flat semiring on the words of a free (non-commutative) monoid truncated at ab
        let labels = ["0", "a", "b", "ab"].map(String::from).to_vec();
        let mul = |x: usize, y: usize| if (x, y) == (1, 2) { 3 } else { 0 };
        let s = FiniteSemiring::from_fn(labels, Some(0), |x, y| if x == y { x } else { 0 }, mul).unwrap();
        assert!(s.verify_axioms().all_pass());
        let id = parse_identity("x*y = y*x").unwrap();
        let f = check_identity_flat(&s, &id, &cfg()).unwrap();
        let b = check_identity_bruteforce(&s, &id, &cfg()).unwrap();
        assert_eq!(f.verdict, Verdict::Fails);
        assert_eq!(b.verdict, Verdict::Fails);
    }
}
