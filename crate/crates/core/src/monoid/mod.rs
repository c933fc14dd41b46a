//! Reduced commutative cancellative monoids: atoms, factorizations, length
//! sets and elasticity, plus finite abelian groups and Davenport constants.
//!
//! Global properties (UFM, HFM, length-factorial, elasticity) are only ever
//! reported over an explicit window of elements; a passing window verdict is
//! evidence, not a proof.

mod factor;
mod group;
mod numerical;

pub use factor::{
    elasticity_of_element, elasticity_window, factorizations, is_hfm_window, is_length_factorial_window,
    is_ufm_window, length_set, window_summary, window_summary_with, ElasticityWindow, FactorMultiset,
    FactorizationSet, Factorizer, MonoidView, WindowSummary, WindowVerdict, DEFAULT_SEARCH_BUDGET,
};
pub use group::{davenport, davenport_with_cap, AbelianGroup, DavenportCertificate, DEFAULT_DAVENPORT_CAP};
pub use numerical::NumericalMonoid;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MonoidError {
    #[error("group of order {order} exceeds the brute-force cap {cap}")]
    CapExceeded { order: u64, cap: u64 },
    #[error("invalid abelian group: {0}")]
    InvalidGroup(String),
    #[error("invalid generator list {0:?}")]
    InvalidGenerators(Vec<u64>),
    #[error("the identity has no factorization into atoms")]
    IdentityElement,
    #[error("element has no atomic factorization")]
    NotAtomic,
    #[error("factorization search ran out of budget; results are partial")]
    Incomplete,
}
