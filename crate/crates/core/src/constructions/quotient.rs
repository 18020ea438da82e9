use std::fmt;

use serde::Serialize;

use super::{ConstructionError, GeneratedSubsemiring};
use crate::semiring::FiniteSemiring;

/// `x` and `y` lie in `J`, yet `x ∘ z` and `y ∘ z` (or the mirrored
/// products) are distinct and not both in `J`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CongruenceViolation {
    pub op: char,
    pub left: bool,
    pub x: String,
    pub y: String,
    pub z: String,
    pub x_result: String,
    pub y_result: String,
}

impl fmt::Display for CongruenceViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (xs, ys) = if self.left {
            (format!("{} {} {}", self.z, self.op, self.x), format!("{} {} {}", self.z, self.op, self.y))
        } else {
            (format!("{} {} {}", self.x, self.op, self.z), format!("{} {} {}", self.y, self.op, self.z))
        };
        write!(f, "{xs} = {} but {ys} = {}", self.x_result, self.y_result)
    }
}

#[derive(Debug, Clone)]
pub struct IdealQuotient {
    pub carrier: GeneratedSubsemiring,
    /// Carrier indices, ascending.
    pub ideal: Vec<usize>,
    pub quotient: FiniteSemiring,
    /// Carrier index to quotient index; the ideal is class 0.
    pub class_of: Vec<usize>,
}

/// Collapses `J` to one element after checking that `(J×J) ∪ id` is a
/// congruence of both operations.
pub fn quotient_by_ideal(a: GeneratedSubsemiring, ideal: &[usize]) -> Result<IdealQuotient, ConstructionError> {
    if ideal.is_empty() {
        return Err(ConstructionError::EmptyIdeal);
    }
    if let Some(&bad) = ideal.iter().find(|&&j| j >= a.len()) {
        return Err(ConstructionError::ForeignIdealElement(bad));
    }
    let mut in_j = vec![false; a.len()];
    for &j in ideal {
        in_j[j] = true;
    }
    if let Some(z) = a.ambient().zero().and_then(|z| a.index_of(&z)) {
        if !in_j[z] {
            return Err(ConstructionError::ZeroOutsideIdeal);
        }
    }
    let members: Vec<usize> = (0..a.len()).filter(|&i| in_j[i]).collect();
    let label = |i: usize| a.ambient().label(&a.elements()[i]);
    // related pairs only differ inside J, so each image set must be a
    // singleton or lie in J
    for z in 0..a.len() {
        for (op, left) in [('+', false), ('+', true), ('*', false), ('*', true)] {
            let apply = |x: usize| match (op, left) {
                ('+', false) => a.add(x, z),
                ('+', true) => a.add(z, x),
                (_, false) => a.mul(x, z),
                _ => a.mul(z, x),
            };
            let first = apply(members[0]);
            for &y in &members[1..] {
                let r = apply(y);
                if r != first && !(in_j[r] && in_j[first]) {
                    return Err(ConstructionError::NotCongruence(Box::new(CongruenceViolation {
                        op,
                        left,
                        x: label(members[0]),
                        y: label(y),
                        z: label(z),
                        x_result: label(first),
                        y_result: label(r),
                    })));
                }
            }
        }
    }
    let mut class_of = vec![0; a.len()];
    let mut labels = vec!["0".to_string()];
    for i in 0..a.len() {
        if !in_j[i] {
            class_of[i] = labels.len();
            labels.push(label(i));
        }
    }
    let mut rep = vec![members[0]; labels.len()];
    for i in 0..a.len() {
        rep[class_of[i]] = if in_j[i] { members[0] } else { i };
    }
    let quotient = FiniteSemiring::from_fn(
        labels,
        Some(0),
        |x, y| class_of[a.add(rep[x], rep[y])],
        |x, y| class_of[a.mul(rep[x], rep[y])],
    )?;
    Ok(IdealQuotient { carrier: a, ideal: members, quotient, class_of })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{find_semiring_isomorphism, generated_subsemiring, DirectPower, Tuple};
    use crate::words::build_sc_from_str;

    fn sc_abc_closure() -> GeneratedSubsemiring {
        let s = build_sc_from_str("abc").unwrap();
        let gens: Vec<Tuple> = ["a", "b", "c"].iter().map(|l| vec![s.index_of(l).unwrap()]).collect();
        generated_subsemiring(DirectPower::new(s, 1).unwrap(), &gens, 1000).unwrap()
    }

    #[test]
    fn zero_ideal_gives_the_carrier() {
        let a = sc_abc_closure();
        let z = a.index_of(&[0]).unwrap();
        let carrier = a.to_semiring();
        let q = quotient_by_ideal(a, &[z]).unwrap();
        assert_eq!(q.quotient.size(), 8);
        assert!(find_semiring_isomorphism(&q.quotient, &carrier).is_some());
    }

    #[test]
    fn whole_carrier_collapses_to_one() {
        let a = sc_abc_closure();
        let all: Vec<usize> = (0..a.len()).collect();
        let q = quotient_by_ideal(a, &all).unwrap();
        assert_eq!(q.quotient.size(), 1);
    }

    #[test]
    fn non_ideal_is_reported() {
        let a = sc_abc_closure();
        let z = a.index_of(&[0]).unwrap();
        let ga = a.index_of(&[1]).unwrap();
        // {0, a}: a*b = ab while 0*b = 0
        match quotient_by_ideal(a, &[z, ga]) {
            Err(ConstructionError::NotCongruence(v)) => assert_eq!(v.op, '*'),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn zero_must_be_collapsed() {
        let a = sc_abc_closure();
        let ga = a.index_of(&[1]).unwrap();
        assert!(matches!(quotient_by_ideal(a.clone(), &[ga]), Err(ConstructionError::ZeroOutsideIdeal)));
        assert!(matches!(quotient_by_ideal(a.clone(), &[]), Err(ConstructionError::EmptyIdeal)));
        assert!(matches!(quotient_by_ideal(a, &[99]), Err(ConstructionError::ForeignIdealElement(99))));
    }
}
