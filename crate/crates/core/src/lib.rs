//! Norms, normsets, class groups and factorization invariants for quadratic
//! orders, abstract reduced monoids and valuation-net monoids.

pub mod arith;
pub mod monoid;
pub mod quadratic;
pub mod class_groups;
pub mod normset;
pub mod report;
pub mod hfd;
pub mod valnet;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/quadratic-orders.md")]
    mod quadratic_orders {}
    #[doc = include_str!("../../../book/src/class-groups.md")]
    mod class_groups {}
    #[doc = include_str!("../../../book/src/normsets.md")]
    mod normsets {}
    #[doc = include_str!("../../../book/src/factorization.md")]
    mod factorization {}
    #[doc = include_str!("../../../book/src/valuation-nets.md")]
    mod valuation_nets {}
    #[doc = include_str!("../../../book/src/command-line.md")]
    mod command_line {}
}

#[cfg(doctest)]
#[doc = include_str!("../../../README.md")]
mod readme {}
