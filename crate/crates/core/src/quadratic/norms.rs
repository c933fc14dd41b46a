//! Solving `N(x) = m` in an order.

use std::collections::BTreeSet;

use serde::Serialize;

use super::units::Units;
use super::{QuadElem, QuadError, QuadraticOrder};
use crate::arith::{exact_sqrt, isqrt};

/// Solutions of a norm equation.
///
/// Imaginary orders list every solution. Real orders list one representative
/// per class modulo the units of norm `+1`; `exact` says whether the search bound was large
/// enough to make that list complete.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NormSolutions {
    pub elements: Vec<QuadElem>,
    pub exact: bool,
    pub search_bound: Option<u64>,
}

impl NormSolutions {
    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

/// Every `a + b w` with norm `m` (up to units for real orders).
pub fn elements_of_norm(
    order: &QuadraticOrder,
    m: i64,
    search_bound: Option<u64>,
) -> Result<NormSolutions, QuadError> {
    if m == 0 {
        return Err(QuadError::ZeroNorm);
    }
    let m = m as i128;
    let disc = order.discriminant() as i128;
    if order.is_imaginary() {
        if m < 0 {
            return Ok(NormSolutions { elements: Vec::new(), exact: true, search_bound: None });
        }
        let b_max = isqrt(4 * m / -disc);
        let elements = solve_in_strip(order, m, b_max).into_iter().collect();
        return Ok(NormSolutions { elements, exact: true, search_bound: None });
    }
    let bound = search_bound.ok_or(QuadError::NeedsBound)?;
    let units = Units::of(order)?;
    let needed = strip_width(&units, m, disc);
    let elements: BTreeSet<QuadElem> =
        solve_in_strip(order, m, bound as i128).iter().map(|x| units.canonical_same_norm(x)).collect();
    Ok(NormSolutions { elements: elements.into_iter().collect(), exact: bound >= needed, search_bound: Some(bound) })
}

/// Search bound on `|b|` that makes the real-order search for norm `m` complete.
///
/// Some associate of every solution lies within `sqrt(|m|/e) <= |x| < sqrt(|m| e)`
/// for the least norm-one unit `e > 1`; both conjugates are then at most
/// `sqrt(|m| e)` and `|b| = |x - x'| / sqrt(D)`.
pub fn exact_search_bound(order: &QuadraticOrder, m: i64) -> Result<u64, QuadError> {
    if order.is_imaginary() {
        return Err(QuadError::NotReal);
    }
    let units = Units::of(order)?;
    Ok(strip_width(&units, m as i128, order.discriminant() as i128))
}

fn strip_width(units: &Units, m: i128, disc: i128) -> u64 {
    let eps = units.norm_one_unit().expect("real order has a fundamental unit");
    (2.0 * (m.unsigned_abs() as f64 * eps / disc as f64).sqrt()).floor() as u64 + 1
}

/// All solutions with `|b| <= b_max`, from `a = (-t b +- sqrt(4m + D b^2)) / 2`.
fn solve_in_strip(order: &QuadraticOrder, m: i128, b_max: i128) -> BTreeSet<QuadElem> {
    let t = order.w_trace();
    let disc = order.discriminant() as i128;
    let mut out = BTreeSet::new();
    for b in -b_max..=b_max {
        let rad = 4 * m + disc * b * b;
        let Some(r) = exact_sqrt(rad) else { continue };
        for root in [r, -r] {
            let num = -t * b + root;
            if num % 2 == 0 {
                out.insert(order.elem(num / 2, b));
            }
        }
    }
    out
}
