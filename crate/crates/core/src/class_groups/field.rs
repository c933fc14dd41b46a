//! Field-level data: Minkowski bounds, prime splitting, the Galois action on classes.

use std::f64::consts::PI;

use num_rational::Rational64;
use serde::Serialize;

use super::{ClassError, ClassGroupData};
use crate::arith::{is_prime, kronecker_prime};
use crate::quadratic::QuadraticField;

/// Denominator of the outward-rounded Minkowski bound.
const MINKOWSKI_SCALE: i64 = 1_000_000;

/// `(1/2) (4/pi)^r sqrt|d_F|`, rounded up to a multiple of `1e-6` with one
/// extra step of slack so float error never rounds it below the true value.
pub fn minkowski_bound(field: &QuadraticField) -> Rational64 {
    let r = if field.is_imaginary() { 1 } else { 0 };
    let exact = 0.5 * (4.0 / PI).powi(r) * (field.discriminant().unsigned_abs() as f64).sqrt();
    let scaled = (exact * MINKOWSKI_SCALE as f64).ceil() as i64 + 1;
    Rational64::new(scaled, MINKOWSKI_SCALE)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SplitKind {
    Split,
    Inert,
    Ramified,
}

/// How `p` decomposes in a quadratic field: `e` ramification index, `f` residue degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct PrimeSplit {
    pub p: u64,
    pub kind: SplitKind,
    pub e_p: u32,
    pub f_p: u32,
}

impl PrimeSplit {
    /// Number of primes above `p`.
    pub fn prime_count(&self) -> u32 {
        match self.kind {
            SplitKind::Split => 2,
            _ => 1,
        }
    }
}

pub fn splitting_type(field: &QuadraticField, p: u64) -> Result<PrimeSplit, ClassError> {
    if !is_prime(p) {
        return Err(ClassError::NotPrime(p));
    }
    let (kind, e_p, f_p) = match kronecker_prime(field.discriminant(), p) {
        0 => (SplitKind::Ramified, 2, 1),
        1 => (SplitKind::Split, 1, 1),
        _ => (SplitKind::Inert, 1, 2),
    };
    Ok(PrimeSplit { p, kind, e_p, f_p })
}

/// Conjugation sends every class to its inverse, so it acts trivially exactly
/// when the group has exponent dividing 2.
pub fn galois_action_trivial(cg: &ClassGroupData) -> bool {
    2 % cg.structure.exponent() == 0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::primes_up_to;
    use crate::class_groups::class_group;

    fn field(d: i64) -> QuadraticField {
        QuadraticField::new(d).unwrap()
    }

    fn approx(r: Rational64) -> f64 {
        *r.numer() as f64 / *r.denom() as f64
    }

    #[test]
    fn minkowski_examples() {
        for (d, value) in [(-1, 4.0 / PI), (-10, 2.0 / PI * 40f64.sqrt()), (34, 136f64.sqrt() / 2.0)] {
            let m = approx(minkowski_bound(&field(d)));
            assert!(m >= value && m - value < 3e-6, "d={d}: {m} vs {value}");
        }
    }

    #[test]
    fn splitting_examples() {
        let gi = field(-1);
        assert_eq!(splitting_type(&gi, 2).unwrap().kind, SplitKind::Ramified);
        assert_eq!(splitting_type(&gi, 5).unwrap().kind, SplitKind::Split);
        let s = splitting_type(&field(-10), 3).unwrap();
        assert_eq!((s.kind, s.f_p), (SplitKind::Inert, 2));
        assert!(splitting_type(&gi, 9).is_err());
    }

    #[test]
    fn splitting_partitions_primes() {
        for d in [-1i64, -3, -5, -10, -14, 2, 34, 5] {
            let f = field(d);
            for p in primes_up_to(100) {
                let s = splitting_type(&f, p).unwrap();
                assert_eq!(s.e_p * s.f_p * s.prime_count(), 2);
                assert_eq!(s.f_p == 2, s.kind == SplitKind::Inert);
                assert_eq!(f.discriminant() % p as i64 == 0, s.kind == SplitKind::Ramified);
            }
        }
    }

    #[test]
    fn galois_examples() {
        assert!(galois_action_trivial(&class_group(-20).unwrap()));
        assert!(!galois_action_trivial(&class_group(-56).unwrap()));
        assert!(galois_action_trivial(&class_group(-4).unwrap()));
    }
}
