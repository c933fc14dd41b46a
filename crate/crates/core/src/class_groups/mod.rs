//! Binary quadratic forms `a x^2 + b xy + c y^2`, their reduction and
//! composition, and the class groups they realize.
//!
//! Negative discriminants use positive definite forms. Positive non-square
//! discriminants use reduced indefinite forms grouped into cycles; cycles are
//! the narrow classes and the wide group is the narrow group modulo the
//! class of the negated principal form.

mod field;
mod group;
mod indefinite;

pub use field::{galois_action_trivial, minkowski_bound, splitting_type, PrimeSplit, SplitKind};
pub use group::{
    class_group, class_group_real, class_group_structure, class_number, narrow_class_group, reduced_forms, ClassGroupData,
    ClassGroupKind,
};

use std::fmt;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::arith::{ext_gcd, gcd, isqrt};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassError {
    #[error("{0} is not a valid non-square discriminant (must be 0 or 1 mod 4)")]
    BadDiscriminant(i64),
    #[error("forms have different discriminants {0} and {1}")]
    Mismatch(i64, i64),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("form {0} is not positive definite")]
    NotPositive(BQForm),
    #[error("form {0} is not primitive")]
    NotPrimitive(BQForm),
    #[error("class group of order {0} is too large to tabulate")]
    TooLarge(usize),
}

/// `a x^2 + b xy + c y^2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BQForm {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl BQForm {
    pub fn new(a: i64, b: i64, c: i64) -> Self {
        BQForm { a, b, c }
    }

    pub fn discriminant(&self) -> i64 {
        self.b * self.b - 4 * self.a * self.c
    }

    pub fn is_primitive(&self) -> bool {
        gcd(gcd(self.a as i128, self.b as i128), self.c as i128) == 1
    }

    /// `(1, 0, -D/4)` or `(1, 1, (1-D)/4)`.
    pub fn principal(disc: i64) -> Result<Self, ClassError> {
        check_discriminant(disc)?;
        let b = disc.rem_euclid(2);
        Ok(BQForm::new(1, b, (b * b - disc) / 4))
    }

    /// Inverse class, `(a, -b, c)`.
    pub fn inverse(&self) -> Self {
        BQForm::new(self.a, -self.b, self.c)
    }

    /// `(-a, b, -c)`; properly equivalent to `f` exactly when a unit of norm `-1` exists.
    pub fn negated(&self) -> Self {
        BQForm::new(-self.a, self.b, -self.c)
    }

    pub fn eval(&self, x: i64, y: i64) -> i128 {
        let (x, y) = (x as i128, y as i128);
        self.a as i128 * x * x + self.b as i128 * x * y + self.c as i128 * y * y
    }

    /// Reduced form in the same proper class.
    ///
    /// Definite forms must have `a > 0`. Indefinite forms reduce to some
    /// member of their cycle.
    pub fn reduce(&self) -> Result<Self, ClassError> {
        let disc = self.discriminant();
        check_discriminant(disc)?;
        if disc < 0 {
            if self.a <= 0 {
                return Err(ClassError::NotPositive(*self));
            }
            Ok(reduce_definite(*self))
        } else {
            Ok(indefinite::reduce_indefinite(*self))
        }
    }

    pub fn is_reduced(&self) -> bool {
        let disc = self.discriminant();
        if disc < 0 {
            let (a, b, c) = (self.a, self.b, self.c);
            a > 0 && b.abs() <= a && a <= c && (b >= 0 || (b.abs() != a && a != c))
        } else {
            indefinite::is_reduced_indefinite(self)
        }
    }

    /// Dirichlet composition followed by reduction.
    pub fn compose(&self, other: &Self) -> Result<Self, ClassError> {
        let (d1, d2) = (self.discriminant(), other.discriminant());
        if d1 != d2 {
            return Err(ClassError::Mismatch(d1, d2));
        }
        check_discriminant(d1)?;
        compose_unreduced(self, other).reduce()
    }
}

impl fmt::Display for BQForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.a, self.b, self.c)
    }
}

impl Serialize for BQForm {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

pub(crate) fn check_discriminant(disc: i64) -> Result<(), ClassError> {
    let r = disc.rem_euclid(4);
    let square = disc >= 0 && isqrt(disc as i128).pow(2) == disc as i128;
    if (r == 0 || r == 1) && !square {
        Ok(())
    } else {
        Err(ClassError::BadDiscriminant(disc))
    }
}

fn reduce_definite(f: BQForm) -> BQForm {
    let BQForm { mut a, mut b, mut c } = f;
    let disc = f.discriminant();
    loop {
        if b.abs() > a || b == -a {
            // b into (-a, a]
            let two_a = 2 * a;
            let mut nb = b.rem_euclid(two_a);
            if nb > a {
                nb -= two_a;
            }
            b = nb;
            c = (b * b - disc) / (4 * a);
        }
        if c < a {
            (a, c) = (c, a);
            b = -b;
            continue;
        }
        if b.abs() > a || b == -a {
            continue;
        }
        if a == c && b < 0 {
            b = -b;
        }
        return BQForm::new(a, b, c);
    }
}

/// Composition without the final reduction (both forms must share the discriminant).
fn compose_unreduced(f1: &BQForm, f2: &BQForm) -> BQForm {
    let disc = f1.discriminant() as i128;
    let (mut p, mut q) = (*f1, *f2);
    if p.a.abs() > q.a.abs() {
        std::mem::swap(&mut p, &mut q);
    }
    let (a1, b1) = (p.a as i128, p.b as i128);
    let (a2, b2, c2) = (q.a as i128, q.b as i128, q.c as i128);
    let s = (b1 + b2) / 2;
    let n = b2 - s;
    let (y1, d) = if a2 % a1 == 0 {
        (0, a1.abs())
    } else {
        let (g, u, _v) = ext_gcd(a2, a1);
        (u, g)
    };
    let (x2, y2, d1) = if s % d == 0 {
        (0, -1, d)
    } else {
        let (g, u, v) = ext_gcd(s, d);
        (u, -v, g)
    };
    let v1 = a1 / d1;
    let v2 = a2 / d1;
    let r = (y1 * y2 * n - x2 * c2).rem_euclid(v1.abs());
    let b3 = b2 + 2 * v2 * r;
    let a3 = v1 * v2;
    let c3 = (b3 * b3 - disc) / (4 * a3);
    debug_assert_eq!((b3 * b3 - disc) % (4 * a3), 0, "composition lost integrality");
    BQForm::new(a3 as i64, b3 as i64, c3 as i64)
}

/// Form `(p, b, c)` of a prime ideal above `p`, if `p` is not inert and does
/// not divide the conductor part of `disc`.
pub fn prime_form(disc: i64, p: u64) -> Option<BQForm> {
    let p = p as i64;
    let modulus = 4 * p;
    let b = (0..=p).find(|&b| (b * b - disc).rem_euclid(modulus) == 0)?;
    let f = BQForm::new(p, b, (b * b - disc) / modulus);
    f.is_primitive().then_some(f)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn principal_forms() {
        assert_eq!(BQForm::principal(-4).unwrap(), BQForm::new(1, 0, 1));
        assert_eq!(BQForm::principal(-3).unwrap(), BQForm::new(1, 1, 1));
        assert_eq!(BQForm::principal(136).unwrap(), BQForm::new(1, 0, -34));
        assert!(BQForm::principal(-5).is_err());
        assert!(BQForm::principal(16).is_err());
    }

    #[test]
    fn definite_reduction() {
        let f = BQForm::new(3, 2, 5).reduce().unwrap();
        assert_eq!(f, BQForm::new(3, 2, 5));
        assert_eq!(BQForm::new(5, 2, 3).reduce().unwrap(), BQForm::new(3, -2, 5));
        assert_eq!(BQForm::new(2, -2, 3).reduce().unwrap(), BQForm::new(2, 2, 3));
        assert_eq!(BQForm::new(7, 16, 11).reduce().unwrap().discriminant(), BQForm::new(7, 16, 11).discriminant());
        assert!(BQForm::new(-1, 0, -1).reduce().is_err());
        for a in 1..15 {
            for b in -20..20 {
                for c in 1..15 {
                    let f = BQForm::new(a, b, c);
                    if f.discriminant() >= 0 {
                        continue;
                    }
                    let r = f.reduce().unwrap();
                    assert!(r.is_reduced(), "{f} -> {r}");
                    assert_eq!(r.reduce().unwrap(), r);
                    assert_eq!(r.discriminant(), f.discriminant());
                }
            }
        }
    }

    #[test]
    fn composition_examples() {
        let f = BQForm::new(2, 2, 3);
        assert_eq!(f.compose(&f).unwrap(), BQForm::new(1, 0, 5));
        let g = BQForm::new(3, 2, 5);
        let g2 = g.compose(&g).unwrap();
        assert_eq!(g2, BQForm::new(2, 0, 7));
        assert_eq!(g2.compose(&g2).unwrap(), BQForm::principal(-56).unwrap());
        assert!(f.compose(&g).is_err());
    }

    #[test]
    fn prime_forms() {
        assert_eq!(prime_form(-20, 2), Some(BQForm::new(2, 2, 3)));
        assert_eq!(prime_form(-20, 3), Some(BQForm::new(3, 2, 2)));
        assert_eq!(prime_form(-20, 7), Some(BQForm::new(7, 6, 2)));
        assert_eq!(prime_form(-20, 11), None);
        assert_eq!(prime_form(-4, 2), Some(BQForm::new(2, 2, 1)));
    }
}
