use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use serde::{Serialize, Serializer};

use super::{QuadError, QuadraticOrder};

/// `a + b w` in an order with basis `{1, w}`.
///
/// Ordering and equality compare `(a, b)` first, then the order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QuadElem {
    a: i128,
    b: i128,
    order: QuadraticOrder,
}

impl QuadElem {
    pub fn new(order: QuadraticOrder, a: i128, b: i128) -> Self {
        QuadElem { a, b, order }
    }

    pub fn a(&self) -> i128 {
        self.a
    }

    pub fn b(&self) -> i128 {
        self.b
    }

    pub fn order(&self) -> QuadraticOrder {
        self.order
    }

    pub fn is_zero(&self) -> bool {
        self.a == 0 && self.b == 0
    }

    pub fn norm(&self) -> i128 {
        let t = self.order.w_trace();
        let s = self.order.w_norm();
        self.a * self.a + t * self.a * self.b + s * self.b * self.b
    }

    pub fn trace(&self) -> i128 {
        2 * self.a + self.b * self.order.w_trace()
    }

    /// Galois conjugate, `w -> t - w`.
    pub fn conj(&self) -> Self {
        QuadElem::new(self.order, self.a + self.b * self.order.w_trace(), -self.b)
    }

    pub fn checked_mul(&self, rhs: &Self) -> Option<Self> {
        let t = self.order.w_trace();
        let s = self.order.w_norm();
        let bd = self.b.checked_mul(rhs.b)?;
        let a = self.a.checked_mul(rhs.a)?.checked_sub(bd.checked_mul(s)?)?;
        let b = self
            .a
            .checked_mul(rhs.b)?
            .checked_add(self.b.checked_mul(rhs.a)?)?
            .checked_add(bd.checked_mul(t)?)?;
        Some(QuadElem::new(self.order, a, b))
    }

    /// `Some(q)` with `rhs * q = self` when the quotient lies in the order.
    pub fn div_exact(&self, rhs: &Self) -> Option<Self> {
        let n = rhs.norm();
        if n == 0 {
            return None;
        }
        let num = self.checked_mul(&rhs.conj())?;
        (num.a % n == 0 && num.b % n == 0).then(|| QuadElem::new(self.order, num.a / n, num.b / n))
    }

    pub fn divides(&self, other: &Self) -> bool {
        other.div_exact(self).is_some()
    }

    /// A unit is an element whose inverse lies in the order.
    pub fn is_unit(&self) -> bool {
        self.norm().abs() == 1 && self.order.one().div_exact(self).is_some()
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = *self;
        let mut acc = self.order.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            e >>= 1;
            if e > 0 {
                base = base * base;
            }
        }
        acc
    }

    /// Real embedding with `sqrt d > 0` (real orders only).
    pub fn to_f64(&self) -> f64 {
        self.a as f64 + self.b as f64 * self.order.w_real()
    }

    /// Parses `a+b*w` style text; `w`, `-w`, `3`, `2-5*w`, `-1 + w` all work.
    pub fn parse(order: QuadraticOrder, text: &str) -> Result<Self, QuadError> {
        let err = || QuadError::Parse(text.to_string());
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(err());
        }
        let mut a: i128 = 0;
        let mut b: i128 = 0;
        let mut terms = Vec::new();
        let mut start = 0;
        for (i, c) in s.char_indices() {
            if i > 0 && (c == '+' || c == '-') && !s[..i].ends_with(['*', '+', '-']) {
                terms.push(&s[start..i]);
                start = i;
            }
        }
        terms.push(&s[start..]);
        for term in terms {
            let body = term.strip_prefix('+').unwrap_or(term);
            if let Some(coef) = body.strip_suffix('w') {
                let coef = coef.strip_suffix('*').unwrap_or(coef);
                let c: i128 = match coef {
                    "" => 1,
                    "-" => -1,
                    _ => coef.parse().map_err(|_| err())?,
                };
                b = b.checked_add(c).ok_or_else(err)?;
            } else {
                let c: i128 = body.parse().map_err(|_| err())?;
                a = a.checked_add(c).ok_or_else(err)?;
            }
        }
        Ok(QuadElem::new(order, a, b))
    }
}

impl Mul for QuadElem {
    type Output = QuadElem;

    fn mul(self, rhs: Self) -> Self {
        debug_assert_eq!(self.order, rhs.order);
        self.checked_mul(&rhs).expect("quadratic element product overflowed i128")
    }
}

impl Add for QuadElem {
    type Output = QuadElem;

    fn add(self, rhs: Self) -> Self {
        QuadElem::new(self.order, self.a + rhs.a, self.b + rhs.b)
    }
}

impl Sub for QuadElem {
    type Output = QuadElem;

    fn sub(self, rhs: Self) -> Self {
        QuadElem::new(self.order, self.a - rhs.a, self.b - rhs.b)
    }
}

impl Neg for QuadElem {
    type Output = QuadElem;

    fn neg(self) -> Self {
        QuadElem::new(self.order, -self.a, -self.b)
    }
}

impl fmt::Display for QuadElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (a, b) = (self.a, self.b);
        let w_term = |b: i128| match b {
            1 => "w".to_string(),
            -1 => "-w".to_string(),
            _ => format!("{b}*w"),
        };
        match (a, b) {
            (_, 0) => write!(f, "{a}"),
            (0, _) => f.write_str(&w_term(b)),
            (_, b) if b > 0 => write!(f, "{a}+{}", w_term(b)),
            _ => write!(f, "{a}{}", w_term(b)),
        }
    }
}

impl Serialize for QuadElem {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Parses into the maximal order of `Q(i)`; prefer [`QuadElem::parse`].
impl FromStr for QuadElem {
    type Err = QuadError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        QuadElem::parse(QuadraticOrder::maximal(-1).expect("Z[i] exists"), s)
    }
}
