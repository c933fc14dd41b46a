//! Quadratic fields `Q(sqrt d)`, their orders `Z[n xi]`, and exact element
//! arithmetic in the order basis `{1, w}` with `w = n xi`.
//!
//! `xi` is `sqrt d` when `d = 2, 3 mod 4` and `(1 + sqrt d)/2` when
//! `d = 1 mod 4`, so `w` satisfies `w^2 = t w - s` with
//!
//! | case            | trace `t` | norm `s`            |
//! |-----------------|-----------|---------------------|
//! | `w = n sqrt d`  | `0`       | `-n^2 d`            |
//! | `w = n(1+sqrt d)/2` | `n`   | `n^2 (1 - d) / 4`   |
//!
//! and the norm of `a + b w` is `a^2 + t a b + s b^2`.

mod elem;
mod monoid;
mod norms;
mod units;

pub use elem::QuadElem;
pub use monoid::{factor_element, is_irreducible, OrderMonoid};
pub use norms::{elements_of_norm, exact_search_bound, NormSolutions};
pub use units::{fundamental_unit, order_fundamental_unit, unit_group, FundamentalUnit};

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::arith::is_squarefree;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuadError {
    #[error("d = {0} is not a squarefree integer other than 0 and 1")]
    BadRadicand(i64),
    #[error("conductor must be at least 1, got {0}")]
    BadConductor(i64),
    #[error("operation needs an imaginary order (d < 0)")]
    NotImaginary,
    #[error("operation needs a real order (d > 0)")]
    NotReal,
    #[error("real quadratic norm search needs an explicit search bound")]
    NeedsBound,
    #[error("element must be a nonzero nonunit")]
    ZeroOrUnit,
    #[error("norm query must be nonzero")]
    ZeroNorm,
    #[error("elements belong to different orders")]
    OrderMismatch,
    #[error("cannot parse element {0:?}; expected a+b*w")]
    Parse(String),
    #[error("integer overflow while computing {0}")]
    Overflow(&'static str),
}

/// `Q(sqrt d)` for squarefree `d != 0, 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct QuadraticField {
    d: i64,
}

impl QuadraticField {
    pub fn new(d: i64) -> Result<Self, QuadError> {
        if d == 1 || !is_squarefree(d) {
            return Err(QuadError::BadRadicand(d));
        }
        Ok(QuadraticField { d })
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    /// `d` if `d = 1 mod 4`, else `4d`.
    pub fn discriminant(&self) -> i64 {
        if self.d.rem_euclid(4) == 1 {
            self.d
        } else {
            4 * self.d
        }
    }

    pub fn is_imaginary(&self) -> bool {
        self.d < 0
    }

    pub fn xi_kind(&self) -> XiKind {
        if self.d.rem_euclid(4) == 1 {
            XiKind::HalfOnePlusSqrtD
        } else {
            XiKind::SqrtD
        }
    }

    pub fn maximal_order(&self) -> QuadraticOrder {
        QuadraticOrder { field: *self, n: 1 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum XiKind {
    SqrtD,
    HalfOnePlusSqrtD,
}

/// The order `Z[n xi]` of conductor `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct QuadraticOrder {
    field: QuadraticField,
    n: i64,
}

impl QuadraticOrder {
    pub fn new(d: i64, n: i64) -> Result<Self, QuadError> {
        if n < 1 {
            return Err(QuadError::BadConductor(n));
        }
        Ok(QuadraticOrder { field: QuadraticField::new(d)?, n })
    }

    pub fn maximal(d: i64) -> Result<Self, QuadError> {
        Self::new(d, 1)
    }

    pub fn field(&self) -> QuadraticField {
        self.field
    }

    pub fn d(&self) -> i64 {
        self.field.d
    }

    pub fn conductor(&self) -> i64 {
        self.n
    }

    pub fn is_maximal(&self) -> bool {
        self.n == 1
    }

    pub fn is_imaginary(&self) -> bool {
        self.field.is_imaginary()
    }

    pub fn xi_kind(&self) -> XiKind {
        self.field.xi_kind()
    }

    /// `n^2 d_F`.
    pub fn discriminant(&self) -> i64 {
        self.n * self.n * self.field.discriminant()
    }

    /// Trace of `w`.
    pub(crate) fn w_trace(&self) -> i128 {
        match self.xi_kind() {
            XiKind::SqrtD => 0,
            XiKind::HalfOnePlusSqrtD => self.n as i128,
        }
    }

    /// Norm of `w`.
    pub(crate) fn w_norm(&self) -> i128 {
        let n = self.n as i128;
        let d = self.d() as i128;
        match self.xi_kind() {
            XiKind::SqrtD => -n * n * d,
            XiKind::HalfOnePlusSqrtD => n * n * (1 - d) / 4,
        }
    }

    /// Real value of `w` (real orders only).
    pub(crate) fn w_real(&self) -> f64 {
        let root = (self.d() as f64).sqrt();
        let n = self.n as f64;
        match self.xi_kind() {
            XiKind::SqrtD => n * root,
            XiKind::HalfOnePlusSqrtD => n * (1.0 + root) / 2.0,
        }
    }

    pub fn one(&self) -> QuadElem {
        QuadElem::new(*self, 1, 0)
    }

    pub fn w(&self) -> QuadElem {
        QuadElem::new(*self, 0, 1)
    }

    pub fn int(&self, a: i128) -> QuadElem {
        QuadElem::new(*self, a, 0)
    }

    pub fn elem(&self, a: i128, b: i128) -> QuadElem {
        QuadElem::new(*self, a, b)
    }

    /// Human-readable meaning of `w` in printed elements.
    pub fn describe_w(&self) -> String {
        let n = if self.n == 1 { String::new() } else { format!("{}*", self.n) };
        match self.xi_kind() {
            XiKind::SqrtD => format!("w = {n}sqrt({})", self.d()),
            XiKind::HalfOnePlusSqrtD => format!("w = {n}(1+sqrt({}))/2", self.d()),
        }
    }

    /// Converts maximal-order coordinates `(a, b)` in `{1, xi}` when the element lies in this order.
    pub(crate) fn restrict_maximal(&self, x: &QuadElem) -> Option<QuadElem> {
        let n = self.n as i128;
        (x.b() % n == 0).then(|| QuadElem::new(*self, x.a(), x.b() / n))
    }
}

impl fmt::Display for QuadraticOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = if self.n == 1 { String::new() } else { self.n.to_string() };
        match self.xi_kind() {
            XiKind::SqrtD if self.d() == -1 => write!(f, "Z[{n}i]"),
            XiKind::SqrtD => write!(f, "Z[{n}sqrt({})]", self.d()),
            XiKind::HalfOnePlusSqrtD if self.n == 1 => write!(f, "Z[(1+sqrt({}))/2]", self.d()),
            XiKind::HalfOnePlusSqrtD => write!(f, "Z[{n}(1+sqrt({}))/2]", self.d()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_discriminants() {
        assert_eq!(QuadraticField::new(-1).unwrap().discriminant(), -4);
        assert_eq!(QuadraticField::new(-3).unwrap().discriminant(), -3);
        assert_eq!(QuadraticField::new(34).unwrap().discriminant(), 136);
        assert_eq!(QuadraticField::new(5).unwrap().discriminant(), 5);
        assert!(QuadraticField::new(1).is_err());
        assert!(QuadraticField::new(0).is_err());
        assert!(QuadraticField::new(-12).is_err());
        for d in [-163i64, -15, -1, 2, 3, 5, 34] {
            let df = QuadraticField::new(d).unwrap().discriminant();
            assert!(df.rem_euclid(4) == 0 || df.rem_euclid(4) == 1);
        }
    }

    #[test]
    fn xi_kind_follows_d_mod_4() {
        assert_eq!(QuadraticField::new(-3).unwrap().xi_kind(), XiKind::HalfOnePlusSqrtD);
        assert_eq!(QuadraticField::new(-1).unwrap().xi_kind(), XiKind::SqrtD);
        assert_eq!(QuadraticField::new(-2).unwrap().xi_kind(), XiKind::SqrtD);
        assert!(QuadraticOrder::new(-1, 0).is_err());
    }

    #[test]
    fn order_discriminant_and_display() {
        let o = QuadraticOrder::new(-3, 2).unwrap();
        assert_eq!(o.discriminant(), -12);
        assert_eq!(o.to_string(), "Z[2(1+sqrt(-3))/2]");
        assert_eq!(QuadraticOrder::new(-1, 2).unwrap().to_string(), "Z[2i]");
        assert_eq!(QuadraticOrder::maximal(34).unwrap().to_string(), "Z[sqrt(34)]");
    }
}
