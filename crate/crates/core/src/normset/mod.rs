//! The normset `N(R \ {0})` of a quadratic order as a multiplicative monoid.
//!
//! Membership has two backends. Form search solves the norm equation
//! directly; for real orders the search strip is widened to the width that
//! the fundamental unit makes exhaustive. The ideal-theoretic backend factors
//! `|m|` over prime splitting data and asks whether the class (narrow class,
//! for real fields) of a principal ideal is reachable by ideals of norm `|m|`.
//! It covers maximal orders only.

mod ideal;
mod monoid;
mod saturation;

pub use monoid::{factor_in_normset, irreducibles_up_to};
pub use saturation::{
    is_saturated, is_strictly_saturated_window, is_ufd, norm_group_window, strong_saturation_check, NormGroupWindow,
    QuotientWitness, SaturationVerdict, StrictSaturationWindow, StrongSaturation, UfdCertificate, UfdPrimeCheck,
};

use std::collections::HashMap;
use std::sync::RwLock;

use serde::Serialize;
use thiserror::Error;

use crate::class_groups::ClassError;
use crate::monoid::MonoidError;
use crate::quadratic::{elements_of_norm, exact_search_bound, order_fundamental_unit, QuadElem, QuadError, QuadraticOrder};
use ideal::IdealClasses;

/// Default search bound for searches that are not made exact by other means.
pub const DEFAULT_BOUND: u64 = 500;
/// Largest real-order search strip form search will walk.
pub const FORM_SEARCH_CAP: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NormsetError {
    #[error("normset queries must be nonzero")]
    ZeroQuery,
    #[error("{0} is not in the normset")]
    NotMember(i64),
    #[error("|{0}| must be at least 2")]
    TooSmall(i64),
    #[error("backends disagree on {0}")]
    BackendDisagreement(i64),
    #[error("operation needs a maximal order")]
    NotMaximal,
    #[error("norm of the divisor candidate does not divide the norm of the target")]
    NormsDoNotDivide,
    #[error(transparent)]
    Quad(#[from] QuadError),
    #[error(transparent)]
    Class(#[from] ClassError),
    #[error(transparent)]
    Monoid(#[from] MonoidError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BackendPolicy {
    FormSearch,
    IdealTheoretic,
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Answer {
    Yes,
    No,
    Unknown,
}

/// A membership answer with the evidence behind it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub query: i64,
    pub answer: Answer,
    /// An element whose norm is `query` whenever `answer` is `Yes`.
    pub witness: Option<QuadElem>,
    pub bound_used: Option<u64>,
    pub backend: BackendPolicy,
}

impl Verdict {
    pub fn is_yes(&self) -> bool {
        self.answer == Answer::Yes
    }
}

/// The normset of one order, with a membership cache shared across queries.
#[derive(Debug)]
pub struct NormsetHandle {
    order: QuadraticOrder,
    policy: BackendPolicy,
    bound: u64,
    ideal: Option<IdealClasses>,
    minus_one: bool,
    cache: RwLock<HashMap<i64, Verdict>>,
}

impl NormsetHandle {
    /// Ideal-theoretic membership for real maximal orders, form search otherwise.
    pub fn new(order: QuadraticOrder) -> Result<Self, NormsetError> {
        let policy = if !order.is_imaginary() && order.is_maximal() {
            BackendPolicy::IdealTheoretic
        } else {
            BackendPolicy::FormSearch
        };
        Self::with_policy(order, policy, DEFAULT_BOUND)
    }

    pub fn with_policy(order: QuadraticOrder, policy: BackendPolicy, bound: u64) -> Result<Self, NormsetError> {
        let ideal = match policy {
            BackendPolicy::FormSearch => None,
            _ if !order.is_maximal() => return Err(NormsetError::NotMaximal),
            _ => Some(IdealClasses::new(&order)?),
        };
        let minus_one = !order.is_imaginary() && order_fundamental_unit(&order)?.norm_sign < 0;
        Ok(NormsetHandle { order, policy, bound, ideal, minus_one, cache: RwLock::new(HashMap::new()) })
    }

    pub fn order(&self) -> QuadraticOrder {
        self.order
    }

    pub fn policy(&self) -> BackendPolicy {
        self.policy
    }

    pub fn bound(&self) -> u64 {
        self.bound
    }

    /// Whether `-1` is a norm, i.e. the normset is symmetric under sign.
    pub fn contains_minus_one(&self) -> bool {
        self.minus_one
    }

    pub fn contains(&self, m: i64) -> Result<Verdict, NormsetError> {
        if m == 0 {
            return Err(NormsetError::ZeroQuery);
        }
        if let Some(v) = self.cache.read().expect("cache lock").get(&m) {
            return Ok(v.clone());
        }
        let verdict = match self.policy {
            BackendPolicy::FormSearch => self.form_search(m)?,
            BackendPolicy::IdealTheoretic => self.ideal_theoretic(m)?,
            BackendPolicy::Both => {
                let by_forms = self.form_search(m)?;
                let by_ideals = self.ideal_theoretic(m)?;
                if by_forms.answer != by_ideals.answer {
                    return Err(NormsetError::BackendDisagreement(m));
                }
                Verdict { backend: BackendPolicy::Both, ..by_forms }
            }
        };
        self.cache.write().expect("cache lock").insert(m, verdict.clone());
        Ok(verdict)
    }

    /// Treats `Unknown` as absent; every backend is exact on maximal orders.
    pub fn is_member(&self, m: i64) -> bool {
        m != 0 && self.contains(m).is_ok_and(|v| v.is_yes())
    }

    fn form_search(&self, m: i64) -> Result<Verdict, NormsetError> {
        let backend = BackendPolicy::FormSearch;
        if self.order.is_imaginary() {
            let sols = elements_of_norm(&self.order, m, None)?;
            let witness = sols.elements.first().copied();
            let answer = if witness.is_some() { Answer::Yes } else { Answer::No };
            return Ok(Verdict { query: m, answer, witness, bound_used: None, backend });
        }
        let needed = exact_search_bound(&self.order, m)?;
        let bound = if needed <= FORM_SEARCH_CAP { needed } else { self.bound };
        let sols = elements_of_norm(&self.order, m, Some(bound))?;
        let witness = sols.elements.first().copied();
        let answer = match (witness, sols.exact) {
            (Some(_), _) => Answer::Yes,
            (None, true) => Answer::No,
            (None, false) => Answer::Unknown,
        };
        Ok(Verdict { query: m, answer, witness, bound_used: Some(bound), backend })
    }

    fn ideal_theoretic(&self, m: i64) -> Result<Verdict, NormsetError> {
        let ideal = self.ideal.as_ref().ok_or(NormsetError::NotMaximal)?;
        let backend = BackendPolicy::IdealTheoretic;
        if !ideal.is_norm(m) {
            return Ok(Verdict { query: m, answer: Answer::No, witness: None, bound_used: None, backend });
        }
        let bound = if self.order.is_imaginary() { None } else { Some(exact_search_bound(&self.order, m)?) };
        let witness = elements_of_norm(&self.order, m, bound)?.elements.first().copied();
        Ok(Verdict { query: m, answer: Answer::Yes, witness, bound_used: bound, backend })
    }

    /// Canonical representative of `m` modulo the units `{1}` or `{1, -1}` of the normset.
    pub fn canonical(&self, m: i64) -> i64 {
        if self.minus_one {
            m.abs()
        } else {
            m
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn handle(d: i64) -> NormsetHandle {
        NormsetHandle::new(QuadraticOrder::maximal(d).unwrap()).unwrap()
    }

    #[test]
    fn membership_examples() {
        let h = handle(-41);
        assert_eq!(h.contains(5).unwrap().answer, Answer::No);
        assert!(h.contains(45).unwrap().is_yes());
        let r = handle(34);
        let v = r.contains(-9).unwrap();
        assert!(v.is_yes());
        assert_eq!(v.witness.unwrap().norm(), -9);
        assert!(!r.contains_minus_one());
        let gi = handle(-1);
        let v = gi.contains(2).unwrap();
        assert_eq!(v.witness.unwrap().norm(), 2);
        assert_eq!(gi.contains(0), Err(NormsetError::ZeroQuery));
    }

    #[test]
    fn witnesses_reverify() {
        for d in [-1i64, -5, -14, 2, 5, 34] {
            let h = handle(d);
            for m in -60i64..=60 {
                if m == 0 {
                    continue;
                }
                let v = h.contains(m).unwrap();
                if v.is_yes() {
                    assert_eq!(v.witness.unwrap().norm(), m as i128, "d={d} m={m}");
                }
                assert_ne!(v.answer, Answer::Unknown);
            }
        }
    }

    #[test]
    fn both_backends_on_small_fixtures() {
        for d in [-1i64, -2, -3, -5, -10, -14, -41, 2, 3, 10, 34] {
            let order = QuadraticOrder::maximal(d).unwrap();
            let h = NormsetHandle::with_policy(order, BackendPolicy::Both, DEFAULT_BOUND).unwrap();
            for m in -80i64..=80 {
                if m != 0 {
                    h.contains(m).unwrap();
                }
            }
        }
    }

    #[test]
    fn ideal_backend_needs_maximal_order() {
        let order = QuadraticOrder::new(-1, 2).unwrap();
        assert_eq!(
            NormsetHandle::with_policy(order, BackendPolicy::IdealTheoretic, 100).unwrap_err(),
            NormsetError::NotMaximal
        );
        assert!(NormsetHandle::new(order).unwrap().contains(8).unwrap().is_yes());
    }

    #[test]
    fn units_of_the_normset() {
        assert!(handle(2).contains_minus_one());
        assert_eq!(handle(2).canonical(-7), 7);
        assert_eq!(handle(34).canonical(-9), -9);
    }
}
