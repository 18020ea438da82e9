use std::collections::HashMap;

use super::{ConstructionError, DirectPower, Tuple};
use crate::semiring::FiniteSemiring;

pub const DEFAULT_CLOSURE_CAP: usize = 100_000;

/// Least subset of a direct power containing the generators and closed
/// under both operations, in discovery order.
#[derive(Debug, Clone)]
pub struct GeneratedSubsemiring {
    ambient: DirectPower,
    generators: Vec<Tuple>,
    elements: Vec<Tuple>,
    index: HashMap<Tuple, usize>,
}

fn check_generators(ambient: &DirectPower, gens: &[Tuple]) -> Result<(), ConstructionError> {
    if gens.is_empty() {
        return Err(ConstructionError::NoGenerators);
    }
    if let Some(index) = gens.iter().position(|g| !ambient.contains(g)) {
        return Err(ConstructionError::ForeignGenerator { index, arity: ambient.arity() });
    }
    Ok(())
}

/// Fixpoint closure. Each new element is combined with every element found
/// no later than itself, in both orders, so every pair is visited once.
pub fn generated_subsemiring(
    ambient: DirectPower,
    gens: &[Tuple],
    cap: usize,
) -> Result<GeneratedSubsemiring, ConstructionError> {
    check_generators(&ambient, gens)?;
    let mut elements: Vec<Tuple> = Vec::new();
    let mut index: HashMap<Tuple, usize> = HashMap::new();
    let mut push = |t: Tuple, elements: &mut Vec<Tuple>| -> Result<(), ConstructionError> {
        if !index.contains_key(&t) {
            if elements.len() == cap {
                return Err(ConstructionError::ClosureCap(cap));
            }
            index.insert(t.clone(), elements.len());
            elements.push(t);
        }
        Ok(())
    };
    for g in gens {
        push(g.clone(), &mut elements)?;
    }
    let mut i = 0;
    while i < elements.len() {
        for j in 0..=i {
            let (x, y) = (elements[i].clone(), elements[j].clone());
            for t in [ambient.add(&x, &y), ambient.add(&y, &x), ambient.mul(&x, &y), ambient.mul(&y, &x)] {
                push(t, &mut elements)?;
            }
        }
        i += 1;
    }
    let index = elements.iter().enumerate().map(|(i, t)| (t.clone(), i)).collect();
    Ok(GeneratedSubsemiring { ambient, generators: gens.to_vec(), elements, index })
}

impl GeneratedSubsemiring {
    pub fn ambient(&self) -> &DirectPower {
        &self.ambient
    }

    pub fn generators(&self) -> &[Tuple] {
        &self.generators
    }

    pub fn elements(&self) -> &[Tuple] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn index_of(&self, t: &[usize]) -> Option<usize> {
        self.index.get(t).copied()
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        self.index[&self.ambient.add(&self.elements[a], &self.elements[b])]
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.index[&self.ambient.mul(&self.elements[a], &self.elements[b])]
    }

    pub fn to_semiring(&self) -> FiniteSemiring {
        let labels = self.elements.iter().map(|t| self.ambient.label(t)).collect();
        let zero = self.ambient.zero().and_then(|z| self.index_of(&z));
        FiniteSemiring::from_fn(labels, zero, |a, b| self.add(a, b), |a, b| self.mul(a, b))
            .expect("closed tables are well formed")
    }
}

/// The tuple sets the witness constructions quotient by.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IdealShape {
    /// Some coordinate is zero.
    SomeCoordinateZero,
    /// Some coordinate is zero, or some coordinate equals `top` while the
    /// coordinates are not all equal.
    ZeroOrUnbalancedTop { top: usize },
}

impl IdealShape {
    pub fn contains(&self, zero: usize, t: &[usize]) -> bool {
        if t.contains(&zero) {
            return true;
        }
        match *self {
            IdealShape::SomeCoordinateZero => false,
            IdealShape::ZeroOrUnbalancedTop { top } => t.contains(&top) && t.iter().any(|&x| x != t[0]),
        }
    }

    pub fn describe(&self, base: &FiniteSemiring) -> String {
        match *self {
            IdealShape::SomeCoordinateZero => "some coordinate is 0".to_string(),
            IdealShape::ZeroOrUnbalancedTop { top } => {
                format!("some coordinate is 0, or some coordinate is {} and the coordinates differ", base.label(top))
            }
        }
    }

    /// Shows the shape absorbs both operations on the whole power, which
    /// makes it an ideal of every subsemiring.
    pub fn verify_absorbing(&self, power: &DirectPower, exhaustive_cap: usize) -> Result<String, ConstructionError> {
        let base = power.base();
        let fail = |detail: String| ConstructionError::NotAbsorbing { shape: self.describe(base), detail };
        let zero = base.zero().ok_or_else(|| fail("base has no zero".into()))?;
        if let IdealShape::SomeCoordinateZero = self {
            // a zero coordinate survives both operations iff 0 absorbs both in the base
            for x in 0..base.size() {
                for (op, l, r) in [
                    ("+", base.add(zero, x), base.add(x, zero)),
                    ("*", base.mul(zero, x), base.mul(x, zero)),
                ] {
                    if l != zero || r != zero {
                        return Err(fail(format!("0 {op} {} is not 0 in the base", base.label(x))));
                    }
                }
            }
            return Ok("base zero absorbs both operations".to_string());
        }
        let size = power.size();
        if size > exhaustive_cap as u128 {
            return Err(fail(format!("power has {size} elements, exhaustive check capped at {exhaustive_cap}")));
        }
        let members: Vec<Tuple> = (0..size).map(|c| power.decode(c)).filter(|t| self.contains(zero, t)).collect();
        for m in &members {
            for c in 0..size {
                let y = power.decode(c);
                for (op, l, r) in [("+", power.add(m, &y), power.add(&y, m)), ("*", power.mul(m, &y), power.mul(&y, m))] {
                    if !self.contains(zero, &l) || !self.contains(zero, &r) {
                        return Err(fail(format!("{} {op} {} leaves the set", power.label(m), power.label(&y))));
                    }
                }
            }
        }
        Ok(format!("exhaustive over all {size} tuples"))
    }
}

/// `A \ J` for an ideal `J` given as a predicate. Since `J` absorbs, every
/// subterm of a term outside `J` is outside `J`, so closing with `J`-results
/// discarded yields exactly the complement.
#[derive(Debug, Clone)]
pub struct ReducedClosure {
    ambient: DirectPower,
    generators: Vec<Tuple>,
    elements: Vec<Tuple>,
    index: HashMap<Tuple, usize>,
    /// Some element of `A` lies in `J`.
    ideal_nonempty: bool,
}

pub fn reduced_closure(
    ambient: DirectPower,
    gens: &[Tuple],
    shape: IdealShape,
    cap: usize,
) -> Result<ReducedClosure, ConstructionError> {
    check_generators(&ambient, gens)?;
    let zero = ambient
        .base()
        .zero()
        .ok_or_else(|| ConstructionError::Precondition("base semiring has no zero".into()))?;
    let mut elements: Vec<Tuple> = Vec::new();
    let mut index: HashMap<Tuple, usize> = HashMap::new();
    let mut ideal_nonempty = false;
    let mut push = |t: Tuple, elements: &mut Vec<Tuple>, hit: &mut bool| -> Result<(), ConstructionError> {
        if shape.contains(zero, &t) {
            *hit = true;
        } else if !index.contains_key(&t) {
            if elements.len() == cap {
                return Err(ConstructionError::ClosureCap(cap));
            }
            index.insert(t.clone(), elements.len());
            elements.push(t);
        }
        Ok(())
    };
    for g in gens {
        push(g.clone(), &mut elements, &mut ideal_nonempty)?;
    }
    let mut i = 0;
    while i < elements.len() {
        for j in 0..=i {
            let (x, y) = (elements[i].clone(), elements[j].clone());
            for t in [ambient.add(&x, &y), ambient.add(&y, &x), ambient.mul(&x, &y), ambient.mul(&y, &x)] {
                push(t, &mut elements, &mut ideal_nonempty)?;
            }
        }
        i += 1;
    }
    let index = elements.iter().enumerate().map(|(i, t)| (t.clone(), i)).collect();
    Ok(ReducedClosure { ambient, generators: gens.to_vec(), elements, index, ideal_nonempty })
}

impl ReducedClosure {
    pub fn ambient(&self) -> &DirectPower {
        &self.ambient
    }

    pub fn generators(&self) -> &[Tuple] {
        &self.generators
    }

    /// Elements of `A \ J`, in discovery order.
    pub fn elements(&self) -> &[Tuple] {
        &self.elements
    }

    pub fn ideal_nonempty(&self) -> bool {
        self.ideal_nonempty
    }

    /// `A/J` size: the complement plus the class `J` when it is non-empty.
    pub fn quotient_size(&self) -> usize {
        self.elements.len() + usize::from(self.ideal_nonempty)
    }

    /// Quotient index of a tuple: `J` is index 0 when present.
    pub fn class_of(&self, t: &[usize]) -> usize {
        let offset = usize::from(self.ideal_nonempty);
        match self.index.get(t) {
            Some(&i) => i + offset,
            None => 0,
        }
    }

    /// `A/J` with the class `J` labelled `0`.
    pub fn quotient(&self) -> FiniteSemiring {
        let offset = usize::from(self.ideal_nonempty);
        let mut labels = Vec::with_capacity(self.quotient_size());
        if self.ideal_nonempty {
            labels.push("0".to_string());
        }
        labels.extend(self.elements.iter().map(|t| self.ambient.label(t)));
        let op = |a: usize, b: usize, f: &dyn Fn(&[usize], &[usize]) -> Tuple| -> usize {
            if a < offset || b < offset {
                return 0;
            }
            self.class_of(&f(&self.elements[a - offset], &self.elements[b - offset]))
        };
        let zero = self.ideal_nonempty.then_some(0);
        FiniteSemiring::from_fn(
            labels,
            zero,
            |a, b| op(a, b, &|x, y| self.ambient.add(x, y)),
            |a, b| op(a, b, &|x, y| self.ambient.mul(x, y)),
        )
        .expect("quotient tables are well formed")
    }
}
