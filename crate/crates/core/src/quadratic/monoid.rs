//! The multiplicative monoid of nonzero elements of an imaginary order,
//! modulo units.

use std::collections::BTreeSet;

use super::units::Units;
use super::{elements_of_norm, QuadElem, QuadError, QuadraticOrder};
use crate::arith::divisors;
use crate::monoid::{factorizations, FactorizationSet, MonoidView};

/// `R* / U(R)` for an imaginary order `R`, elements kept as canonical associates.
#[derive(Clone, Debug)]
pub struct OrderMonoid {
    order: QuadraticOrder,
    units: Units,
}

impl OrderMonoid {
    pub fn new(order: QuadraticOrder) -> Result<Self, QuadError> {
        if !order.is_imaginary() {
            return Err(QuadError::NotImaginary);
        }
        Ok(OrderMonoid { order, units: Units::of(&order)? })
    }

    pub fn order(&self) -> QuadraticOrder {
        self.order
    }

    pub fn canonical(&self, x: &QuadElem) -> QuadElem {
        self.units.canonical(x)
    }

    /// Canonical elements of norm exactly `m`.
    fn of_norm(&self, m: u64) -> BTreeSet<QuadElem> {
        elements_of_norm(&self.order, m as i64, None)
            .expect("imaginary search needs no bound")
            .elements
            .iter()
            .map(|x| self.canonical(x))
            .collect()
    }
}

impl MonoidView for OrderMonoid {
    type Elem = QuadElem;

    fn is_identity(&self, x: &QuadElem) -> bool {
        x.norm() == 1
    }

    fn op(&self, a: &QuadElem, b: &QuadElem) -> QuadElem {
        self.canonical(&(*a * *b))
    }

    fn quotient(&self, b: &QuadElem, a: &QuadElem) -> Option<QuadElem> {
        b.div_exact(a).map(|q| self.canonical(&q))
    }

    fn proper_divisors(&self, x: &QuadElem) -> Vec<QuadElem> {
        let n = x.norm() as u64;
        divisors(n)
            .into_iter()
            .filter(|&k| k > 1 && k < n)
            .flat_map(|k| self.of_norm(k))
            .filter(|y| y.divides(x))
            .collect()
    }

    /// Nonunit canonical elements with norm at most `bound`, by norm then coordinates.
    fn window(&self, bound: u64) -> Vec<QuadElem> {
        (2..=bound).flat_map(|m| self.of_norm(m)).collect()
    }
}

fn check_nonzero_nonunit(x: &QuadElem) -> Result<(), QuadError> {
    if !x.order().is_imaginary() {
        return Err(QuadError::NotImaginary);
    }
    if x.is_zero() || x.norm() == 1 {
        return Err(QuadError::ZeroOrUnit);
    }
    Ok(())
}

/// Whether `x` has no factorization into two nonunits, by exhausting every
/// candidate divisor norm `k | N(x)` with `2 <= k <= N(x)/2`.
pub fn is_irreducible(x: &QuadElem) -> Result<bool, QuadError> {
    check_nonzero_nonunit(x)?;
    let n = x.norm() as u64;
    let order = x.order();
    for k in divisors(n).into_iter().filter(|&k| k >= 2 && k <= n / 2) {
        let sols = elements_of_norm(&order, k as i64, None)?;
        if sols.elements.iter().any(|y| y.divides(x)) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Every factorization of `x` into irreducibles, up to units and order.
pub fn factor_element(x: &QuadElem) -> Result<FactorizationSet<QuadElem>, QuadError> {
    check_nonzero_nonunit(x)?;
    let monoid = OrderMonoid::new(x.order())?;
    let canon = monoid.canonical(x);
    Ok(factorizations(&monoid, &canon).expect("nonunit has a factorization set"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monoid::FactorMultiset;

    fn order(d: i64, n: i64) -> QuadraticOrder {
        QuadraticOrder::new(d, n).unwrap()
    }

    #[test]
    fn irreducibility_examples() {
        let z2i = order(-1, 2);
        assert!(is_irreducible(&z2i.int(2)).unwrap());
        for p in [2i64, 3, 5, 7, 11] {
            let o = order(-1, p);
            // p + p i = p + w
            assert!(is_irreducible(&o.elem(p as i128, 1)).unwrap(), "p={p}");
        }
        assert!(!is_irreducible(&order(-5, 1).int(6)).unwrap());
        assert_eq!(is_irreducible(&order(-5, 1).int(1)), Err(QuadError::ZeroOrUnit));
        assert_eq!(is_irreducible(&order(5, 1).int(2)), Err(QuadError::NotImaginary));
    }

    #[test]
    fn six_in_z_sqrt_minus_5() {
        let o = order(-5, 1);
        let set = factor_element(&o.int(6)).unwrap();
        let expected: BTreeSet<FactorMultiset<QuadElem>> = [
            FactorMultiset::new(vec![o.int(2), o.int(3)]),
            FactorMultiset::new(vec![o.elem(1, 1), o.elem(1, -1)]),
        ]
        .into_iter()
        .collect();
        assert!(set.complete);
        assert_eq!(set.factorizations, expected);
        assert_eq!(set.lengths(), BTreeSet::from([2]));
    }

    #[test]
    fn eight_in_z_2i() {
        let o = order(-1, 2);
        let set = factor_element(&o.int(8)).unwrap();
        assert_eq!(set.lengths(), BTreeSet::from([2, 3]));
        let two = o.int(2);
        assert!(set.factorizations.contains(&FactorMultiset::new(vec![two, two, two])));
        let m = OrderMonoid::new(o).unwrap();
        let plus = m.canonical(&o.elem(2, 1));
        let minus = m.canonical(&o.elem(2, -1));
        assert!(set.factorizations.contains(&FactorMultiset::new(vec![plus, minus])));
    }

    #[test]
    fn two_in_gaussian_integers() {
        let o = order(-1, 1);
        let set = factor_element(&o.int(2)).unwrap();
        let one_plus_i = o.elem(1, 1);
        assert_eq!(set.factorizations, BTreeSet::from([FactorMultiset::new(vec![one_plus_i, one_plus_i])]));
    }

    #[test]
    fn factorization_sets_are_associate_invariant() {
        for (d, n) in [(-1, 1), (-3, 1), (-5, 1), (-1, 2)] {
            let o = order(d, n);
            let units = crate::quadratic::unit_group(&o).unwrap();
            for a in 1..6 {
                for b in -3..4 {
                    let x = o.elem(a, b);
                    if x.norm() <= 1 {
                        continue;
                    }
                    let base = factor_element(&x).unwrap();
                    for u in &units {
                        assert_eq!(factor_element(&(*u * x)).unwrap(), base);
                    }
                }
            }
        }
    }
}
