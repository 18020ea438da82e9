use super::ConstructionError;
use crate::semiring::FiniteSemiring;

/// Element of a direct power: one base index per coordinate.
pub type Tuple = Vec<usize>;

/// `S^k`, never materialized; closures discover the tuples they need.
#[derive(Debug, Clone)]
pub struct DirectPower {
    base: FiniteSemiring,
    arity: usize,
}

impl DirectPower {
    pub fn new(base: FiniteSemiring, arity: usize) -> Result<Self, ConstructionError> {
        if arity == 0 {
            return Err(ConstructionError::ZeroArity);
        }
        Ok(Self { base, arity })
    }

    pub fn base(&self) -> &FiniteSemiring {
        &self.base
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    /// `|S|^k`, saturating.
    pub fn size(&self) -> u128 {
        (self.base.size() as u128).saturating_pow(self.arity as u32)
    }

    pub fn zero(&self) -> Option<Tuple> {
        self.base.zero().map(|z| vec![z; self.arity])
    }

    pub fn contains(&self, t: &[usize]) -> bool {
        t.len() == self.arity && t.iter().all(|&x| x < self.base.size())
    }

    pub fn add(&self, x: &[usize], y: &[usize]) -> Tuple {
        x.iter().zip(y).map(|(&a, &b)| self.base.add(a, b)).collect()
    }

    pub fn mul(&self, x: &[usize], y: &[usize]) -> Tuple {
        x.iter().zip(y).map(|(&a, &b)| self.base.mul(a, b)).collect()
    }

    pub fn label(&self, t: &[usize]) -> String {
        let parts: Vec<&str> = t.iter().map(|&x| self.base.label(x)).collect();
        format!("({})", parts.join(","))
    }

    /// Tuple at position `code` in lexicographic order.
    pub fn decode(&self, mut code: u128) -> Tuple {
        let n = self.base.size() as u128;
        let mut t = vec![0; self.arity];
        for slot in t.iter_mut().rev() {
            *slot = (code % n) as usize;
            code /= n;
        }
        t
    }

    /// The full table, refused past `cap` elements.
    pub fn materialize(&self, cap: usize) -> Result<FiniteSemiring, ConstructionError> {
        let size = self.size();
        if size > cap as u128 {
            return Err(ConstructionError::ClosureCap(cap));
        }
        let n = self.base.size();
        let encode = |t: &[usize]| t.iter().fold(0usize, |acc, &x| acc * n + x);
        let tuples: Vec<Tuple> = (0..size).map(|c| self.decode(c)).collect();
        let labels = tuples.iter().map(|t| self.label(t)).collect();
        let zero = self.zero().map(|z| encode(&z));
        Ok(FiniteSemiring::from_fn(
            labels,
            zero,
            |a, b| encode(&self.add(&tuples[a], &tuples[b])),
            |a, b| encode(&self.mul(&tuples[a], &tuples[b])),
        )?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::find_semiring_isomorphism;
    use crate::words::{build_sc_from_str, builtin_s7};

    #[test]
    fn s7_squared_has_nine_elements() {
        let p = DirectPower::new(builtin_s7(), 2).unwrap();
        assert_eq!(p.size(), 9);
        let m = p.materialize(100).unwrap();
        assert_eq!(m.size(), 9);
        assert!(m.verify_axioms().all_pass());
    }

    #[test]
    fn zero_is_all_zero_tuple() {
        let s = builtin_s7();
        let p = DirectPower::new(s.clone(), 3).unwrap();
        let z = s.zero().unwrap();
        assert_eq!(p.zero(), Some(vec![z, z, z]));
        let m = p.materialize(100).unwrap();
        assert_eq!(m.label(m.zero().unwrap()), "(0,0,0)");
        assert_eq!(m.find_multiplicative_zero(), m.zero());
    }

    #[test]
    fn first_power_is_the_base() {
        let s = build_sc_from_str("abc").unwrap();
        let m = DirectPower::new(s.clone(), 1).unwrap().materialize(100).unwrap();
        assert!(find_semiring_isomorphism(&m, &s).is_some());
    }

    #[test]
    fn arity_zero_refused() {
        assert!(matches!(DirectPower::new(builtin_s7(), 0), Err(ConstructionError::ZeroArity)));
        let p = DirectPower::new(builtin_s7(), 9).unwrap();
        assert!(matches!(p.materialize(1000), Err(ConstructionError::ClosureCap(1000))));
    }
}
