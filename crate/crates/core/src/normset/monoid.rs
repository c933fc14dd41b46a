//! The normset as a reduced monoid: divisibility is taken inside the normset.

use crate::arith::divisors;
use crate::monoid::{factorizations, FactorizationSet, Factorizer, MonoidView};

use super::{NormsetError, NormsetHandle};

impl MonoidView for NormsetHandle {
    type Elem = i64;

    fn is_identity(&self, x: &i64) -> bool {
        self.canonical(*x) == 1
    }

    fn op(&self, a: &i64, b: &i64) -> i64 {
        self.canonical(a * b)
    }

    fn quotient(&self, b: &i64, a: &i64) -> Option<i64> {
        if *a == 0 || b % a != 0 {
            return None;
        }
        let q = b / a;
        self.is_member(q).then(|| self.canonical(q))
    }

    fn proper_divisors(&self, x: &i64) -> Vec<i64> {
        let n = x.unsigned_abs();
        let mut out = Vec::new();
        for k in divisors(n).into_iter().filter(|&k| k > 1 && k < n) {
            let k = k as i64;
            let signs: &[i64] = if self.contains_minus_one() { &[1] } else { &[1, -1] };
            for &s in signs {
                let y = s * k;
                if self.is_member(y) && self.quotient(x, &y).is_some() {
                    out.push(y);
                }
            }
        }
        out
    }

    /// Members with `2 <= |m| <= bound`, by absolute value, negatives first.
    fn window(&self, bound: u64) -> Vec<i64> {
        let mut out = Vec::new();
        for k in 2..=bound as i64 {
            if !self.contains_minus_one() && self.is_member(-k) {
                out.push(-k);
            }
            if self.is_member(k) {
                out.push(k);
            }
        }
        out
    }
}

/// Atoms of the normset with `2 <= |m| <= bound`.
pub fn irreducibles_up_to(ns: &NormsetHandle, bound: u64) -> Vec<i64> {
    let mut fz = Factorizer::new(ns);
    ns.window(bound).into_iter().filter(|m| fz.is_atom(m)).collect()
}

/// Every factorization of `m` into normset atoms.
pub fn factor_in_normset(ns: &NormsetHandle, m: i64) -> Result<FactorizationSet<i64>, NormsetError> {
    if m.unsigned_abs() < 2 {
        return Err(NormsetError::TooSmall(m));
    }
    if !ns.is_member(m) {
        return Err(NormsetError::NotMember(m));
    }
    Ok(factorizations(ns, &ns.canonical(m))?)
}
