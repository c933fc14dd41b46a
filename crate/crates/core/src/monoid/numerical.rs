use num_integer::Integer;

use super::{MonoidError, MonoidView};

/// Additive submonoid of `N_0` generated by finitely many positive integers,
/// e.g. `<2, 3>`.
#[derive(Clone, Debug)]
pub struct NumericalMonoid {
    generators: Vec<u64>,
    gcd: u64,
    /// `reachable[k]` says whether `k * gcd` lies in the monoid.
    reachable: Vec<bool>,
}

impl NumericalMonoid {
    pub fn new(generators: &[u64]) -> Result<Self, MonoidError> {
        let mut gens: Vec<u64> = generators.to_vec();
        gens.sort_unstable();
        gens.dedup();
        if gens.is_empty() || gens[0] == 0 {
            return Err(MonoidError::InvalidGenerators(generators.to_vec()));
        }
        let gcd = gens.iter().fold(0, |g, &x| g.gcd(&x));
        let reduced: Vec<u64> = gens.iter().map(|g| g / gcd).collect();
        // every multiple beyond (max generator)^2 is reachable once gcd is divided out
        let limit = (reduced.last().unwrap().pow(2) + 1) as usize;
        let mut reachable = vec![false; limit + 1];
        reachable[0] = true;
        for k in 1..=limit {
            reachable[k] = reduced.iter().any(|&g| g as usize <= k && reachable[k - g as usize]);
        }
        Ok(NumericalMonoid { generators: gens, gcd, reachable })
    }

    pub fn generators(&self) -> &[u64] {
        &self.generators
    }

    pub fn contains(&self, x: u64) -> bool {
        if !x.is_multiple_of(self.gcd) {
            return false;
        }
        let k = (x / self.gcd) as usize;
        self.reachable.get(k).copied().unwrap_or(true)
    }
}

impl MonoidView for NumericalMonoid {
    type Elem = u64;

    fn is_identity(&self, x: &u64) -> bool {
        *x == 0
    }

    fn op(&self, a: &u64, b: &u64) -> u64 {
        a + b
    }

    fn quotient(&self, b: &u64, a: &u64) -> Option<u64> {
        let c = b.checked_sub(*a)?;
        self.contains(c).then_some(c)
    }

    fn proper_divisors(&self, x: &u64) -> Vec<u64> {
        (1..*x).filter(|&y| self.contains(y) && self.contains(x - y)).collect()
    }

    fn window(&self, bound: u64) -> Vec<u64> {
        (1..=bound).filter(|&x| self.contains(x)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monoid::{factorizations, FactorMultiset};

    #[test]
    fn membership() {
        let m = NumericalMonoid::new(&[2, 3]).unwrap();
        assert!(!m.contains(1));
        assert!((2..300).all(|x| m.contains(x)));
        let even = NumericalMonoid::new(&[4, 6]).unwrap();
        assert!(!even.contains(5));
        assert!(even.contains(10));
        assert!(!even.contains(2));
        assert!(NumericalMonoid::new(&[]).is_err());
        assert!(NumericalMonoid::new(&[0, 2]).is_err());
    }

    #[test]
    fn factorizations_of_six() {
        let m = NumericalMonoid::new(&[2, 3]).unwrap();
        let set = factorizations(&m, &6).unwrap();
        let expected: Vec<FactorMultiset<u64>> =
            vec![FactorMultiset::new(vec![2, 2, 2]), FactorMultiset::new(vec![3, 3])];
        assert!(set.complete);
        assert_eq!(set.factorizations.into_iter().collect::<Vec<_>>(), expected);
        let two = factorizations(&m, &2).unwrap();
        assert_eq!(two.len(), 1);
        assert!(factorizations(&m, &0).is_err());
    }
}
