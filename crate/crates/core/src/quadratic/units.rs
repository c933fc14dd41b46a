//! Unit groups, fundamental units and associate normalization.

use num_integer::Integer;
use serde::Serialize;

use super::{QuadElem, QuadError, QuadraticField, QuadraticOrder, XiKind};
use crate::arith::isqrt;

/// Continued-fraction steps tried before giving up on a regulator.
const MAX_CF_STEPS: usize = 100_000;
/// Powers of the maximal-order unit tried when descending to an order.
const MAX_UNIT_POWER: u32 = 10_000;

/// The smallest unit `> 1` of a real order together with the sign of its norm.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FundamentalUnit {
    pub unit: QuadElem,
    pub norm_sign: i8,
}

/// Fundamental unit of the maximal order of `Q(sqrt d)`, `d > 1`, from the
/// continued fraction of `xi`.
pub fn fundamental_unit(d: i64) -> Result<FundamentalUnit, QuadError> {
    let field = QuadraticField::new(d)?;
    if field.is_imaginary() {
        return Err(QuadError::NotReal);
    }
    let order = field.maximal_order();
    let t = order.w_trace();
    let radicand = d as i128;
    let root = isqrt(radicand);
    // xi = (p + sqrt(D)) / q with q | D - p^2
    let (mut p, mut q) = match field.xi_kind() {
        XiKind::SqrtD => (0i128, 1i128),
        XiKind::HalfOnePlusSqrtD => (1, 2),
    };
    let (mut h_prev, mut h) = (0i128, 1i128);
    let (mut k_prev, mut k) = (1i128, 0i128);
    let overflow = || QuadError::Overflow("fundamental unit");
    for _ in 0..MAX_CF_STEPS {
        let a = if q > 0 { Integer::div_floor(&(p + root), &q) } else { Integer::div_floor(&(p + root + 1), &q) };
        let h_next = a.checked_mul(h).and_then(|x| x.checked_add(h_prev)).ok_or_else(overflow)?;
        let k_next = a.checked_mul(k).and_then(|x| x.checked_add(k_prev)).ok_or_else(overflow)?;
        (h_prev, h, k_prev, k) = (h, h_next, k, k_next);
        // h - k xi is tiny; its conjugate is the unit above 1
        let small = order.elem(h, -k);
        let n = small.checked_mul(&small.conj()).ok_or_else(overflow)?.a();
        if n.abs() == 1 {
            let unit = order.elem(h.checked_sub(k.checked_mul(t).ok_or_else(overflow)?).ok_or_else(overflow)?, k);
            return Ok(FundamentalUnit { unit, norm_sign: n.signum() as i8 });
        }
        p = a * q - p;
        q = (radicand - p * p) / q;
    }
    Err(overflow())
}

/// Fundamental unit of a real order: the least power of the maximal-order
/// unit that lies in the order.
pub fn order_fundamental_unit(order: &QuadraticOrder) -> Result<FundamentalUnit, QuadError> {
    let base = fundamental_unit(order.d())?;
    let mut power = base.unit;
    for e in 1..=MAX_UNIT_POWER {
        if let Some(unit) = order.restrict_maximal(&power) {
            let sign = if base.norm_sign < 0 && e % 2 == 1 { -1 } else { 1 };
            return Ok(FundamentalUnit { unit, norm_sign: sign });
        }
        power = power.checked_mul(&base.unit).ok_or(QuadError::Overflow("order unit"))?;
    }
    Err(QuadError::Overflow("order unit"))
}

/// All units of an imaginary order.
pub fn unit_group(order: &QuadraticOrder) -> Result<Vec<QuadElem>, QuadError> {
    if !order.is_imaginary() {
        return Err(QuadError::NotImaginary);
    }
    let mut units: Vec<QuadElem> = match (order.d(), order.conductor()) {
        (-1, 1) => vec![order.elem(1, 0), order.elem(0, 1), order.elem(-1, 0), order.elem(0, -1)],
        // w = (1+sqrt(-3))/2 is a primitive sixth root of unity
        (-3, 1) => {
            let w = order.w();
            (0..6).map(|k| w.pow(k)).collect()
        }
        _ => vec![order.one(), -order.one()],
    };
    units.sort();
    Ok(units)
}

/// The unit group of an order in a form suited to normalizing associates.
#[derive(Clone, Debug)]
pub(crate) enum Units {
    Finite(Vec<QuadElem>),
    /// Generated by `-1` and `unit`; `step` is `unit` or `unit^2`, whichever has norm 1.
    Infinite { unit: FundamentalUnit, step: QuadElem, step_inv: QuadElem },
}

impl Units {
    pub(crate) fn of(order: &QuadraticOrder) -> Result<Self, QuadError> {
        if order.is_imaginary() {
            return Ok(Units::Finite(unit_group(order)?));
        }
        let unit = order_fundamental_unit(order)?;
        let step = if unit.norm_sign < 0 { unit.unit * unit.unit } else { unit.unit };
        Ok(Units::Infinite { unit, step, step_inv: step.conj() })
    }

    /// Least unit `> 1` of norm `+1` of a real order, as a real number.
    pub(crate) fn norm_one_unit(&self) -> Option<f64> {
        match self {
            Units::Finite(_) => None,
            Units::Infinite { step, .. } => Some(step.to_f64()),
        }
    }

    /// Canonical representative modulo the norm-preserving units only.
    pub(crate) fn canonical_same_norm(&self, x: &QuadElem) -> QuadElem {
        match self {
            Units::Finite(_) => self.canonical(x),
            Units::Infinite { step, step_inv, .. } => least_b_max(descend(x, step, step_inv)),
        }
    }

    /// Canonical associate: lexicographically greatest `(a, b)` over unit
    /// multiples, restricted to multiples of least `|b|` for real orders.
    pub(crate) fn canonical(&self, x: &QuadElem) -> QuadElem {
        match self {
            Units::Finite(units) => units.iter().map(|u| *u * *x).max().expect("unit group is nonempty"),
            Units::Infinite { unit, step, step_inv } => {
                let mut cands = descend(x, step, step_inv);
                if unit.norm_sign < 0 {
                    cands.extend(descend(&(*x * unit.unit), step, step_inv));
                }
                least_b_max(cands)
            }
        }
    }
}

/// Among candidates of least `|b|` and their negatives, the lexicographically greatest.
fn least_b_max(cands: Vec<QuadElem>) -> QuadElem {
    let least = cands.iter().map(|c| c.b().abs()).min().expect("descent yields candidates");
    cands
        .into_iter()
        .filter(|c| c.b().abs() == least)
        .flat_map(|c| [c, -c])
        .max()
        .expect("at least one candidate")
}

/// Multiples `x * step^k` minimizing `|b|`; `|b|` is unimodal in `k`.
fn descend(x: &QuadElem, step: &QuadElem, step_inv: &QuadElem) -> Vec<QuadElem> {
    let mut cur = *x;
    for mover in [step, step_inv] {
        loop {
            match cur.checked_mul(mover) {
                Some(next) if next.b().abs() < cur.b().abs() => cur = next,
                _ => break,
            }
        }
    }
    let mut out = vec![cur];
    for mover in [step, step_inv] {
        if let Some(next) = cur.checked_mul(mover) {
            if next.b().abs() == cur.b().abs() {
                out.push(next);
            }
        }
    }
    out
}

impl QuadElem {
    /// Canonical representative of the associate class of `self`.
    pub fn canonical_associate(&self) -> Result<QuadElem, QuadError> {
        Ok(Units::of(&self.order())?.canonical(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::exact_sqrt;

    /// Smallest `y > 0` with `D y^2 +- 4` a square gives `(x + y sqrt D)/2`.
    fn brute_unit(d: i64) -> (i128, i128, i8) {
        let disc = QuadraticField::new(d).unwrap().discriminant() as i128;
        for y in 1i128.. {
            for (sign, delta) in [(-1i8, -4i128), (1, 4)] {
                if let Some(x) = exact_sqrt(disc * y * y + delta) {
                    return (x, y, sign);
                }
            }
        }
        unreachable!()
    }

    #[test]
    fn fundamental_units_match_examples() {
        let fu = fundamental_unit(34).unwrap();
        assert_eq!((fu.unit.a(), fu.unit.b(), fu.norm_sign), (35, 6, 1));
        let fu = fundamental_unit(2).unwrap();
        assert_eq!((fu.unit.a(), fu.unit.b(), fu.norm_sign), (1, 1, -1));
        let fu = fundamental_unit(5).unwrap();
        assert_eq!((fu.unit.a(), fu.unit.b(), fu.norm_sign), (0, 1, -1));
        assert!(fundamental_unit(-5).is_err());
    }

    #[test]
    fn fundamental_units_agree_with_brute_force() {
        for d in [2i64, 3, 5, 6, 7, 10, 11, 13, 14, 15, 17, 19, 21, 22, 23, 29, 31, 34, 37, 41, 43, 46, 61, 94] {
            let fu = fundamental_unit(d).unwrap();
            let (x, y, sign) = brute_unit(d);
            let disc = QuadraticField::new(d).unwrap().discriminant() as i128;
            // (x + y sqrt(disc))/2 in field coordinates, compared through the real embedding
            let expected = (x as f64 + y as f64 * (disc as f64).sqrt()) / 2.0;
            let got = fu.unit.to_f64();
            assert!((got - expected).abs() / expected < 1e-9, "d={d}: {got} vs {expected}");
            assert_eq!(fu.norm_sign, sign, "d={d}");
            assert_eq!(fu.unit.norm(), sign as i128);
        }
    }

    #[test]
    fn order_units() {
        // maximal unit of Q(sqrt 5) is w with w^3 = 2 + sqrt 5 ... in Z[sqrt 5] = Z[2 xi]
        let o = QuadraticOrder::new(5, 2).unwrap();
        let fu = order_fundamental_unit(&o).unwrap();
        assert!(fu.unit.is_unit());
        assert!((fu.unit.to_f64() - (2.0 + 5f64.sqrt())).abs() < 1e-9);
        assert_eq!(fu.norm_sign, -1);
    }

    #[test]
    fn imaginary_unit_groups() {
        assert_eq!(unit_group(&QuadraticOrder::maximal(-1).unwrap()).unwrap().len(), 4);
        assert_eq!(unit_group(&QuadraticOrder::maximal(-3).unwrap()).unwrap().len(), 6);
        assert_eq!(unit_group(&QuadraticOrder::new(-3, 2).unwrap()).unwrap().len(), 2);
        assert_eq!(unit_group(&QuadraticOrder::maximal(-5).unwrap()).unwrap().len(), 2);
        for u in unit_group(&QuadraticOrder::maximal(-3).unwrap()).unwrap() {
            assert!(u.is_unit());
        }
    }

    #[test]
    fn canonical_associates() {
        let gi = QuadraticOrder::maximal(-1).unwrap();
        assert_eq!(gi.elem(1, -1).canonical_associate().unwrap(), gi.elem(1, 1));
        assert_eq!(gi.int(-2).canonical_associate().unwrap(), gi.int(2));
        let r34 = QuadraticOrder::maximal(34).unwrap();
        let eps = r34.elem(35, 6);
        let x = r34.elem(5, 1);
        let c = x.canonical_associate().unwrap();
        assert_eq!((x * eps).canonical_associate().unwrap(), c);
        assert_eq!((-(x * eps.conj())).canonical_associate().unwrap(), c);
        assert_eq!(c.norm(), -9);
    }
}
