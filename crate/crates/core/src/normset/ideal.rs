//! Ideal classes reachable by ideals of a given norm in a maximal order.

use std::collections::BTreeSet;

use crate::arith::factorize;
use crate::class_groups::{
    class_group, narrow_class_group, prime_form, splitting_type, BQForm, ClassError, ClassGroupData, SplitKind,
};
use crate::quadratic::QuadraticOrder;

/// Class group data for the ideal-theoretic membership test.
///
/// Imaginary fields use the ordinary class group. Real fields use the narrow
/// group, where a principal ideal with a generator of negative norm lands in
/// the class `twist` of the negated principal form.
#[derive(Clone, Debug)]
pub(crate) struct IdealClasses {
    pub(crate) order: QuadraticOrder,
    pub(crate) group: ClassGroupData,
    pub(crate) twist: usize,
}

impl IdealClasses {
    pub(crate) fn new(order: &QuadraticOrder) -> Result<Self, ClassError> {
        let disc = order.discriminant();
        if order.is_imaginary() {
            return Ok(IdealClasses { order: *order, group: class_group(disc)?, twist: 0 });
        }
        let group = narrow_class_group(disc)?;
        let twist = group.class_of(&BQForm::principal(disc)?.negated())?;
        Ok(IdealClasses { order: *order, group, twist })
    }

    fn signed_power(&self, x: usize, k: i64) -> usize {
        let base = if k < 0 { self.group.inverse(x) } else { x };
        self.group.power(base, k.unsigned_abs())
    }

    /// Class of the prime form above a non-inert `p`.
    pub(crate) fn prime_class(&self, p: u64) -> usize {
        let f = prime_form(self.group.discriminant, p).expect("non-inert prime of a maximal order has a prime form");
        self.group.class_of(&f).expect("prime forms are primitive")
    }

    /// Every class containing an integral ideal of norm `n`; `None` if no ideal has norm `n`.
    pub(crate) fn classes_of_norm(&self, n: u64) -> Option<BTreeSet<usize>> {
        let field = self.order.field();
        let mut reach = BTreeSet::from([0usize]);
        for (p, e) in factorize(n) {
            let split = splitting_type(&field, p).expect("factor is prime");
            let options: BTreeSet<usize> = match split.kind {
                SplitKind::Inert if e % 2 == 1 => return None,
                SplitKind::Inert => BTreeSet::from([0]),
                SplitKind::Ramified => BTreeSet::from([self.signed_power(self.prime_class(p), e as i64)]),
                // P^i Pbar^(e-i) sits in [P]^(2i-e)
                SplitKind::Split => {
                    let c = self.prime_class(p);
                    (0..=e as i64).map(|i| self.signed_power(c, 2 * i - e as i64)).collect()
                }
            };
            reach = reach.iter().flat_map(|&x| options.iter().map(move |&y| (x, y))).map(|(x, y)| self.group.compose(x, y)).collect();
        }
        Some(reach)
    }

    /// Whether some element of the order has norm exactly `m`.
    pub(crate) fn is_norm(&self, m: i64) -> bool {
        if m == 0 {
            return false;
        }
        if self.order.is_imaginary() && m < 0 {
            return false;
        }
        let target = if m > 0 { 0 } else { self.twist };
        self.classes_of_norm(m.unsigned_abs()).is_some_and(|cs| cs.contains(&target))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn classes(d: i64) -> IdealClasses {
        IdealClasses::new(&QuadraticOrder::maximal(d).unwrap()).unwrap()
    }

    #[test]
    fn norms_in_z_sqrt_minus_41() {
        let ic = classes(-41);
        assert!(ic.is_norm(45));
        assert!(ic.is_norm(9));
        assert!(!ic.is_norm(5));
        assert!(!ic.is_norm(-45));
    }

    #[test]
    fn signs_in_z_sqrt_34() {
        let ic = classes(34);
        assert!(ic.is_norm(-9));
        assert!(ic.is_norm(9));
        assert!(!ic.is_norm(-1));
        assert!(ic.is_norm(2));
        assert!(!ic.is_norm(-2));
        assert!(!ic.is_norm(3));
    }

    #[test]
    fn inert_primes_need_even_exponents() {
        let ic = classes(-1);
        assert!(ic.classes_of_norm(3).is_none());
        assert!(ic.is_norm(9));
        assert!(ic.is_norm(2));
    }
}
