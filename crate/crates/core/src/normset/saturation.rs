//! UFD criterion, saturation family and norm-group windows.

use std::collections::BTreeSet;

use num_rational::Rational64;
use serde::Serialize;

use super::ideal::IdealClasses;
use super::{Answer, NormsetError, NormsetHandle};
use crate::arith::primes_up_to;
use crate::class_groups::{class_group, galois_action_trivial, minkowski_bound, splitting_type, BQForm};
use crate::monoid::AbelianGroup;
use crate::quadratic::{elements_of_norm, exact_search_bound, QuadElem, QuadraticOrder};
use crate::report::display_string;

/// One prime below the Minkowski bound and whether `+-p^f` is a norm.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UfdPrimeCheck {
    pub p: u64,
    pub f_p: u32,
    pub power: i64,
    /// An element of norm `+p^f` or `-p^f`; `None` is the refusal.
    pub witness: Option<QuadElem>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UfdCertificate {
    pub order: QuadraticOrder,
    pub verdict: bool,
    #[serde(serialize_with = "display_string")]
    pub minkowski_bound: Rational64,
    pub primes: Vec<UfdPrimeCheck>,
}

/// The maximal order is a UFD exactly when `+p^f` or `-p^f` is a norm for
/// every prime `p` with `p^f <= M`.
pub fn is_ufd(order: &QuadraticOrder) -> Result<UfdCertificate, NormsetError> {
    if !order.is_maximal() {
        return Err(NormsetError::NotMaximal);
    }
    let ns = NormsetHandle::new(*order)?;
    let bound = minkowski_bound(&order.field());
    let floor = bound.to_integer() as u64;
    let mut primes = Vec::new();
    for p in primes_up_to(floor) {
        let split = splitting_type(&order.field(), p)?;
        let power = (p as i64).pow(split.f_p);
        if Rational64::from_integer(power) > bound {
            continue;
        }
        let witness = [power, -power]
            .into_iter()
            .find_map(|m| ns.contains(m).ok().filter(|v| v.is_yes()).and_then(|v| v.witness));
        primes.push(UfdPrimeCheck { p, f_p: split.f_p, power, witness });
    }
    let verdict = primes.iter().all(|c| c.witness.is_some());
    Ok(UfdCertificate { order: *order, verdict, minkowski_bound: bound, primes })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SaturationVerdict {
    pub saturated: bool,
    pub class_group: AbelianGroup,
    pub galois_action_trivial: bool,
}

/// Saturated exactly when the class group is trivial or 2-elementary.
pub fn is_saturated(order: &QuadraticOrder) -> Result<SaturationVerdict, NormsetError> {
    if !order.is_maximal() {
        return Err(NormsetError::NotMaximal);
    }
    let cg = class_group(order.discriminant())?;
    let trivial = galois_action_trivial(&cg);
    Ok(SaturationVerdict { saturated: trivial, class_group: cg.structure, galois_action_trivial: trivial })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct QuotientWitness {
    pub x: i64,
    pub y: i64,
    pub quotient: i64,
}

/// Strict saturation over `x, y` in the normset with `|x|, |y| <= bound`.
///
/// A failure carries `x | y` with `y / x` outside the normset; a pass is only
/// a window verdict.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StrictSaturationWindow {
    pub holds: bool,
    pub bound: u64,
    pub witness: Option<QuotientWitness>,
}

pub fn is_strictly_saturated_window(order: &QuadraticOrder, bound: u64) -> Result<StrictSaturationWindow, NormsetError> {
    let ns = NormsetHandle::new(*order)?;
    let b = bound as i64;
    // members by |x| ascending, positive first
    let mut members: Vec<i64> = Vec::new();
    for k in 1..=b {
        for x in [k, -k] {
            if ns.is_member(x) {
                members.push(x);
            }
        }
    }
    for q_abs in 1..=b {
        for q in [q_abs, -q_abs] {
            if ns.is_member(q) {
                continue;
            }
            for &x in &members {
                let y = q * x;
                if y.abs() <= b && ns.is_member(y) {
                    let witness = QuotientWitness { x, y, quotient: q };
                    return Ok(StrictSaturationWindow { holds: false, bound, witness: Some(witness) });
                }
            }
        }
    }
    Ok(StrictSaturationWindow { holds: true, bound, witness: None })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StrongSaturation {
    pub answer: Answer,
    /// A divisor of `beta` with the norm of `alpha`.
    pub witness: Option<QuadElem>,
}

/// Looks for a divisor of `beta` whose norm equals `N(alpha)`.
pub fn strong_saturation_check(alpha: &QuadElem, beta: &QuadElem) -> Result<StrongSaturation, NormsetError> {
    let order = alpha.order();
    let (na, nb) = (alpha.norm(), beta.norm());
    if na == 0 || nb == 0 || nb % na != 0 {
        return Err(NormsetError::NormsDoNotDivide);
    }
    let target = i64::try_from(na).map_err(|_| NormsetError::NormsDoNotDivide)?;
    let bound = if order.is_imaginary() { None } else { Some(exact_search_bound(&order, target)?) };
    let sols = elements_of_norm(&order, target, bound)?;
    let witness = sols.elements.into_iter().find(|g| g.divides(beta));
    let answer = if witness.is_some() { Answer::Yes } else { Answer::No };
    Ok(StrongSaturation { answer, witness })
}

/// Lower-bound computation of the subgroup `H` of classes whose ideals have
/// a norm that is also the norm of an element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NormGroupWindow {
    pub bound: u64,
    pub class_number: usize,
    pub h_size: usize,
    pub g_size: usize,
    pub classes_in_h: Vec<BQForm>,
}

/// `H` is taken as the subgroup generated by every class holding an ideal of
/// norm `n <= bound` with `+-n` in the normset, so it only grows with `bound`.
pub fn norm_group_window(order: &QuadraticOrder, bound: u64) -> Result<NormGroupWindow, NormsetError> {
    if !order.is_maximal() {
        return Err(NormsetError::NotMaximal);
    }
    let ideal = IdealClasses::new(order)?;
    let wide = class_group(order.discriminant())?;
    let to_wide = |x: usize| wide.class_of(&ideal.group.classes[x]).expect("same discriminant");
    let mut found = BTreeSet::new();
    for n in 1..=bound {
        let Some(classes) = ideal.classes_of_norm(n) else { continue };
        let n = n as i64;
        if ideal.is_norm(n) || ideal.is_norm(-n) {
            found.extend(classes.into_iter().map(to_wide));
        }
    }
    let gens: Vec<usize> = found.into_iter().collect();
    let h = wide.subgroup_generated(&gens);
    let class_number = wide.class_number();
    Ok(NormGroupWindow {
        bound,
        class_number,
        h_size: h.len(),
        g_size: class_number / h.len(),
        classes_in_h: h.into_iter().map(|x| wide.classes[x]).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn order(d: i64) -> QuadraticOrder {
        QuadraticOrder::maximal(d).unwrap()
    }

    #[test]
    fn ufd_examples() {
        let gi = is_ufd(&order(-1)).unwrap();
        assert!(gi.verdict);
        assert!(gi.primes.is_empty());
        let c = is_ufd(&order(-10)).unwrap();
        assert!(!c.verdict);
        assert_eq!(c.primes.iter().map(|p| p.p).collect::<Vec<_>>(), vec![2]);
        assert!(c.primes[0].witness.is_none());
        assert!(!is_ufd(&order(-5)).unwrap().verdict);
        assert!(is_ufd(&order(-163)).unwrap().verdict);
        assert!(is_ufd(&order(2)).unwrap().verdict);
        assert!(!is_ufd(&order(10)).unwrap().verdict);
    }

    #[test]
    fn saturation_examples() {
        assert!(is_saturated(&order(34)).unwrap().saturated);
        assert!(!is_saturated(&order(-41)).unwrap().saturated);
        assert!(is_saturated(&order(-5)).unwrap().saturated);
        let w = is_strictly_saturated_window(&order(34), 100).unwrap();
        assert!(!w.holds);
        assert_eq!(w.witness, Some(QuotientWitness { x: 9, y: -9, quotient: -1 }));
        assert!(is_strictly_saturated_window(&order(-1), 100).unwrap().holds);
        // 25 and 50 = N(3 + sqrt-41) are norms, 2 is not
        let w = is_strictly_saturated_window(&order(-41), 100).unwrap();
        assert_eq!(w.witness, Some(QuotientWitness { x: 25, y: 50, quotient: 2 }));
    }

    #[test]
    fn strong_saturation() {
        let o = order(34);
        let three = o.int(3);
        let five = o.elem(5, 1);
        // N(5+sqrt34) = -9 divides N(3) = 9, but no divisor of 3 has norm -9
        assert_eq!(strong_saturation_check(&five, &three).unwrap().answer, Answer::No);
        assert_eq!(strong_saturation_check(&three, &three).unwrap().answer, Answer::Yes);
        let o = order(-5);
        let r = strong_saturation_check(&o.int(2), &o.int(6)).unwrap();
        assert_eq!(r.answer, Answer::Yes);
        assert!(strong_saturation_check(&o.int(3), &o.int(2)).is_err());
    }

    #[test]
    fn norm_group_examples() {
        let w = norm_group_window(&order(-1), 50).unwrap();
        assert_eq!((w.h_size, w.g_size), (1, 1));
        let w = norm_group_window(&order(-5), 100).unwrap();
        assert_eq!(w.h_size * w.g_size, 2);
        let w = norm_group_window(&order(-41), 200).unwrap();
        assert!(w.h_size > 1);
        assert_eq!(w.h_size * w.g_size, 8);
        let w = norm_group_window(&order(34), 100).unwrap();
        assert_eq!(w.h_size, 1);
    }
}
