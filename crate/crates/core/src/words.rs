//! Flat semirings of commutative subwords, and the three-element `S_7`.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::semiring::FiniteSemiring;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WordError {
    #[error("empty word")]
    EmptyWord,
    #[error("invalid letter {0:?} (letters must be alphabetic)")]
    InvalidLetter(char),
    #[error("word set is empty")]
    EmptySet,
}

/// A non-empty multiset of letters, kept as its sorted letter sequence.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CommutativeWord(Vec<char>);

impl CommutativeWord {
    pub fn new(letters: impl IntoIterator<Item = char>) -> Result<Self, WordError> {
        let mut v: Vec<char> = letters.into_iter().collect();
        if v.is_empty() {
            return Err(WordError::EmptyWord);
        }
        if let Some(&c) = v.iter().find(|c| !c.is_alphabetic()) {
            return Err(WordError::InvalidLetter(c));
        }
        v.sort_unstable();
        Ok(Self(v))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn letters(&self) -> &[char] {
        &self.0
    }

    pub fn multiplicity(&self, c: char) -> usize {
        self.0.iter().filter(|&&x| x == c).count()
    }

    /// The multiset sum.
    pub fn product(&self, other: &Self) -> Self {
        let mut v = Vec::with_capacity(self.len() + other.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            if self.0[i] <= other.0[j] {
                v.push(self.0[i]);
                i += 1;
            } else {
                v.push(other.0[j]);
                j += 1;
            }
        }
        v.extend_from_slice(&self.0[i..]);
        v.extend_from_slice(&other.0[j..]);
        Self(v)
    }

    pub fn divides(&self, other: &Self) -> bool {
        let mut j = 0;
        for &c in &self.0 {
            while j < other.0.len() && other.0[j] < c {
                j += 1;
            }
            if j == other.0.len() || other.0[j] != c {
                return false;
            }
            j += 1;
        }
        true
    }

    /// Every non-empty sub-multiset.
    pub fn subwords(&self) -> Vec<CommutativeWord> {
        let mut runs: Vec<(char, usize)> = Vec::new();
        for &c in &self.0 {
            match runs.last_mut() {
                Some((d, k)) if *d == c => *k += 1,
                _ => runs.push((c, 1)),
            }
        }
        let mut out = Vec::new();
        let mut counts = vec![0usize; runs.len()];
        loop {
            // odometer over multiplicity vectors
            let mut i = 0;
            while i < runs.len() && counts[i] == runs[i].1 {
                counts[i] = 0;
                i += 1;
            }
            if i == runs.len() {
                break;
            }
            counts[i] += 1;
            let letters: Vec<char> = runs
                .iter()
                .zip(&counts)
                .flat_map(|(&(c, _), &k)| std::iter::repeat_n(c, k))
                .collect();
            out.push(CommutativeWord(letters));
        }
        out
    }
}

impl FromStr for CommutativeWord {
    type Err = WordError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::new(s.trim().chars())
    }
}

impl fmt::Display for CommutativeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.iter().try_for_each(|c| write!(f, "{c}"))
    }
}

/// `S_c(W)`: the non-empty subwords of members of `W` plus `0`.
///
/// Element 0 is `0`; words follow by length, then lexicographically.
pub fn build_sc(words: &[CommutativeWord]) -> Result<FiniteSemiring, WordError> {
    if words.is_empty() {
        return Err(WordError::EmptySet);
    }
    let set: BTreeSet<CommutativeWord> = words.iter().flat_map(|w| w.subwords()).collect();
    let mut elems: Vec<CommutativeWord> = set.into_iter().collect();
    elems.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    let index: HashMap<&CommutativeWord, usize> = elems.iter().enumerate().map(|(i, w)| (w, i + 1)).collect();
    let mut labels = vec!["0".to_string()];
    labels.extend(elems.iter().map(ToString::to_string));
    let mul = |a: usize, b: usize| -> usize {
        if a == 0 || b == 0 {
            return 0;
        }
        let p = elems[a - 1].product(&elems[b - 1]);
        index.get(&p).copied().unwrap_or(0)
    };
    Ok(FiniteSemiring::from_fn(labels, Some(0), |a, b| if a == b { a } else { 0 }, mul)
        .expect("subword tables are well-formed"))
}

/// Parses each whitespace- or comma-separated word and builds `S_c(W)`.
pub fn build_sc_from_str(spec: &str) -> Result<FiniteSemiring, WordError> {
    let words = spec
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .map(str::parse)
        .collect::<Result<Vec<CommutativeWord>, _>>()?;
    build_sc(&words)
}

/// `{1, a, 0}` with `1+1 = 1`, `a+a = a`, all other sums `0`; `1` is a
/// multiplicative identity, `a·a = 0`, `0` absorbs.
pub fn builtin_s7() -> FiniteSemiring {
    let labels = ["1", "a", "0"].map(String::from).to_vec();
    FiniteSemiring::new(
        labels,
        &[vec![0, 2, 2], vec![2, 1, 2], vec![2, 2, 2]],
        &[vec![0, 1, 2], vec![1, 2, 2], vec![2, 2, 2]],
        Some(2),
    )
    .expect("S_7 tables are well-formed")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> CommutativeWord {
        s.parse().unwrap()
    }

    #[test]
    fn abc_has_eight_elements() {
        let s = build_sc(&[w("abc")]).unwrap();
        assert_eq!(s.labels(), &["0", "a", "b", "c", "ab", "ac", "bc", "abc"]);
        assert!(s.verify_axioms().all_pass());
        assert!(s.is_flat());
    }

    #[test]
    fn abcd_has_sixteen_elements() {
        let s = build_sc(&[w("abcd")]).unwrap();
        assert_eq!(s.size(), 16);
        assert!(s.verify_axioms().all_pass());
    }

    #[test]
    fn truncated_products() {
        let s = build_sc(&[w("abc")]).unwrap();
        let i = |l: &str| s.index_of(l).unwrap();
        assert_eq!(s.mul(i("ab"), i("c")), i("abc"));
        assert_eq!(s.mul(i("ab"), i("b")), i("0"));
        assert_eq!(s.mul(i("a"), i("a")), i("0"));
    }

    #[test]
    fn repeated_letters_are_distinct_words() {
        let aab = build_sc(&[w("aab")]).unwrap();
        let abb = build_sc(&[w("abb")]).unwrap();
        assert!(aab.index_of("aa").is_some());
        assert!(aab.index_of("bb").is_none());
        assert!(abb.index_of("bb").is_some());
        let i = |l: &str| aab.index_of(l).unwrap();
        assert_eq!(aab.mul(i("a"), i("a")), i("aa"));
        assert!(aab.verify_axioms().all_pass());
    }

    #[test]
    fn size_is_divisor_count_plus_one() {
        for word in ["a", "ab", "aab", "aabbc", "abcde", "aaab"] {
            let word = w(word);
            let mut divisors = 1;
            let mut letters: Vec<char> = word.letters().to_vec();
            letters.dedup();
            for c in letters {
                divisors *= word.multiplicity(c) + 1;
            }
            assert_eq!(build_sc(std::slice::from_ref(&word)).unwrap().size(), divisors - 1 + 1, "{word}");
        }
    }

    #[test]
    fn subwords_divide() {
        let word = w("aabc");
        for sub in word.subwords() {
            assert!(sub.divides(&word));
        }
        assert!(!w("bb").divides(&word));
    }

    #[test]
    fn errors() {
        assert_eq!("".parse::<CommutativeWord>(), Err(WordError::EmptyWord));
        assert_eq!("a1".parse::<CommutativeWord>(), Err(WordError::InvalidLetter('1')));
        assert_eq!(build_sc(&[]), Err(WordError::EmptySet));
    }

    #[test]
    fn s7_tables() {
        let s = builtin_s7();
        let i = |l: &str| s.index_of(l).unwrap();
        assert_eq!(s.add(i("1"), i("a")), i("0"));
        assert_eq!(s.add(i("1"), i("1")), i("1"));
        assert_eq!(s.mul(i("a"), i("a")), i("0"));
        assert_eq!(s.mul(i("1"), i("a")), i("a"));
        assert_eq!(s.mul(i("a"), i("1")), i("a"));
        assert!(s.verify_axioms().all_pass());
    }

    #[test]
    fn multi_word_sets() {
        let s = build_sc_from_str("ab, bc").unwrap();
        assert_eq!(s.labels(), &["0", "a", "b", "c", "ab", "bc"]);
        assert!(s.verify_axioms().all_pass());
    }
}
