//! Valuation nets: an element `b` of a one-dimensional Prüfer domain is
//! recorded as the family `(v_M(b))` of its values at the maximal ideals.
//! Multiplication becomes componentwise addition and divisibility becomes
//! the componentwise order, so factorization questions about the domain turn
//! into questions about an additive monoid of nets.
//!
//! Two kinds of index sets are modeled: finite lists of labeled maximal
//! ideals, and the natural numbers plus one point at infinity. Nets over the
//! second kind are eventually constant and stored as a finite support, a tail
//! value and the value at infinity.

mod eps;
mod monoid;
mod parse;

pub use eps::{eps_add, ideal_norm, ideal_norm_product_check, EpsVal, Ideal, IdealNorm};
pub use monoid::{
    accp_chain, all_factorizations, bfd_bound, comaximal_family, ffd_window, find_atomic_factorization,
    finite_cover_check, idempotent_cover_check, inf_s_b, s_b, LengthSet, MonoidDescription, NetMonoid, Search,
};
pub use parse::{parse_monoid, parse_net};

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_rational::Ratio;
use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

use crate::report::display_string;

/// Values are non-negative rationals; discrete indices only ever hold integers.
pub type Value = Ratio<u64>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ValnetError {
    #[error("nets live over different index sets")]
    IndexMismatch,
    #[error("invalid net: {0}")]
    InvalidNet(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("{0} is not an element of the monoid")]
    NotInMonoid(String),
    #[error("an ideal needs at least one generator")]
    EmptyIdeal,
    #[error("operation needs a generated monoid")]
    NeedsGenerated,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ValueTag {
    /// Value group `Z`: the maximal ideal is invertible.
    Discrete,
    /// Dense value group: the maximal ideal is idempotent.
    Dense,
}

/// A maximal ideal: a position `0..len` of a finite index set, a natural
/// number `1, 2, ...` of an omega index set, or its point at infinity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Index {
    At(u64),
    Infinity,
}

impl fmt::Display for Index {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Index::At(n) => write!(f, "{n}"),
            Index::Infinity => f.write_str("inf"),
        }
    }
}

impl Serialize for Index {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Shape {
    Finite(usize),
    Omega,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IndexSet {
    Finite { labels: Vec<String>, tags: Vec<ValueTag> },
    /// Every natural number is discrete; the point at infinity carries its own tag.
    OmegaPlusPoint { infinity_tag: ValueTag },
}

impl IndexSet {
    pub fn finite(entries: Vec<(String, ValueTag)>) -> Result<Self, ValnetError> {
        if entries.is_empty() {
            return Err(ValnetError::InvalidNet("empty index set".into()));
        }
        let labels: Vec<String> = entries.iter().map(|(l, _)| l.clone()).collect();
        if labels.iter().collect::<BTreeSet<_>>().len() != labels.len() {
            return Err(ValnetError::InvalidNet("duplicate index label".into()));
        }
        Ok(IndexSet::Finite { labels, tags: entries.into_iter().map(|(_, t)| t).collect() })
    }

    pub fn omega(infinity_tag: ValueTag) -> Self {
        IndexSet::OmegaPlusPoint { infinity_tag }
    }

    pub fn shape(&self) -> Shape {
        match self {
            IndexSet::Finite { labels, .. } => Shape::Finite(labels.len()),
            IndexSet::OmegaPlusPoint { .. } => Shape::Omega,
        }
    }

    pub fn tag(&self, index: Index) -> ValueTag {
        match (self, index) {
            (IndexSet::Finite { tags, .. }, Index::At(i)) => tags.get(i as usize).copied().unwrap_or(ValueTag::Discrete),
            (IndexSet::OmegaPlusPoint { infinity_tag }, Index::Infinity) => *infinity_tag,
            _ => ValueTag::Discrete,
        }
    }

    pub fn label(&self, index: Index) -> String {
        match (self, index) {
            (IndexSet::Finite { labels, .. }, Index::At(i)) => labels[i as usize].clone(),
            _ => index.to_string(),
        }
    }

    pub fn index_of(&self, label: &str) -> Option<Index> {
        match self {
            IndexSet::Finite { labels, .. } => labels.iter().position(|l| l == label).map(|i| Index::At(i as u64)),
            IndexSet::OmegaPlusPoint { .. } if label == "inf" => Some(Index::Infinity),
            IndexSet::OmegaPlusPoint { .. } => label.parse::<u64>().ok().filter(|&n| n >= 1).map(Index::At),
        }
    }

    /// Dense indices, listed; an omega set has at most the point at infinity.
    pub fn dense_indices(&self) -> Vec<Index> {
        match self {
            IndexSet::Finite { tags, .. } => (0..tags.len())
                .filter(|&i| tags[i] == ValueTag::Dense)
                .map(|i| Index::At(i as u64))
                .collect(),
            IndexSet::OmegaPlusPoint { infinity_tag: ValueTag::Dense } => vec![Index::Infinity],
            IndexSet::OmegaPlusPoint { .. } => Vec::new(),
        }
    }

    /// Shape matches and discrete indices hold integers.
    pub fn check(&self, net: &ValNet) -> Result<(), ValnetError> {
        if net.shape != self.shape() {
            return Err(ValnetError::IndexMismatch);
        }
        for (index, v) in net.entries() {
            if self.tag(index) == ValueTag::Discrete && !v.is_integer() {
                return Err(ValnetError::InvalidNet(format!("non-integer value {v} at discrete index {}", self.label(index))));
            }
        }
        Ok(())
    }
}

/// Total valuation `sum_M v_M(b)`; infinite when infinitely many values are positive.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Length {
    Finite(Value),
    Infinite,
}

impl fmt::Display for Length {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Length::Finite(v) => write!(f, "{v}"),
            Length::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for Length {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// The net of values of one element.
///
/// Stored normalized: finite nets drop zero entries, omega nets drop support
/// entries equal to the tail. Equal nets are therefore equal as values.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ValNet {
    shape: Shape,
    support: BTreeMap<u64, Value>,
    tail: Value,
    infinity: Option<Value>,
}

impl Serialize for ValNet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        display_string(self, s)
    }
}

impl ValNet {
    pub fn zero(shape: Shape) -> Self {
        let infinity = (shape == Shape::Omega).then(Value::zero);
        ValNet { shape, support: BTreeMap::new(), tail: Value::zero(), infinity }
    }

    /// A net over a finite index set, one value per position.
    pub fn finite(values: impl IntoIterator<Item = Value>) -> Self {
        let support: BTreeMap<u64, Value> = values.into_iter().enumerate().map(|(i, v)| (i as u64, v)).collect();
        let shape = Shape::Finite(support.len());
        ValNet { shape, support, tail: Value::zero(), infinity: None }.normalized()
    }

    pub fn from_integers(values: &[u64]) -> Self {
        Self::finite(values.iter().map(|&v| Value::from_integer(v)))
    }

    /// An eventually constant net over the natural numbers plus infinity.
    pub fn eventually_constant(
        support: impl IntoIterator<Item = (u64, Value)>,
        tail: Value,
        infinity: Value,
    ) -> Result<Self, ValnetError> {
        let support: BTreeMap<u64, Value> = support.into_iter().collect();
        if support.contains_key(&0) {
            return Err(ValnetError::InvalidNet("omega indices start at 1".into()));
        }
        Ok(ValNet { shape: Shape::Omega, support, tail, infinity: Some(infinity) }.normalized())
    }

    /// The net with value 1 at the natural number `n` and 0 elsewhere.
    pub fn unit_at(n: u64) -> Self {
        assert!(n >= 1, "omega indices start at 1");
        ValNet {
            shape: Shape::Omega,
            support: BTreeMap::from([(n, Value::from_integer(1))]),
            tail: Value::zero(),
            infinity: Some(Value::zero()),
        }
    }

    fn normalized(mut self) -> Self {
        let tail = self.tail;
        self.support.retain(|_, v| *v != tail);
        self
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn tail(&self) -> Value {
        self.tail
    }

    pub fn infinity(&self) -> Option<Value> {
        self.infinity
    }

    pub fn is_zero(&self) -> bool {
        self.support.is_empty() && self.tail.is_zero() && self.infinity.is_none_or(|v| v.is_zero())
    }

    /// Value at `index`; `None` when the index is not part of the shape.
    pub fn value_at(&self, index: Index) -> Option<Value> {
        match (self.shape, index) {
            (Shape::Finite(len), Index::At(i)) if (i as usize) < len => Some(self.support.get(&i).copied().unwrap_or_default()),
            (Shape::Omega, Index::At(n)) if n >= 1 => Some(self.support.get(&n).copied().unwrap_or(self.tail)),
            (Shape::Omega, Index::Infinity) => self.infinity,
            _ => None,
        }
    }

    /// Explicitly stored entries: the support and, for omega nets, infinity.
    /// The tail value is not listed.
    pub fn entries(&self) -> impl Iterator<Item = (Index, Value)> + '_ {
        let listed = self.support.iter().map(|(&k, &v)| (Index::At(k), v));
        listed.chain(self.infinity.map(|v| (Index::Infinity, v)))
    }

    /// Largest support key, i.e. the last position where the net differs from its tail.
    pub fn support_end(&self) -> u64 {
        self.support.keys().next_back().copied().unwrap_or(0)
    }

    fn combine(&self, other: &ValNet, f: impl Fn(Value, Value) -> Option<Value>) -> Result<Option<ValNet>, ValnetError> {
        if self.shape != other.shape {
            return Err(ValnetError::IndexMismatch);
        }
        let keys: BTreeSet<u64> = self.support.keys().chain(other.support.keys()).copied().collect();
        let at = |net: &ValNet, k: u64| net.support.get(&k).copied().unwrap_or(net.tail);
        let mut support = BTreeMap::new();
        for k in keys {
            let Some(v) = f(at(self, k), at(other, k)) else { return Ok(None) };
            support.insert(k, v);
        }
        let Some(tail) = f(self.tail, other.tail) else { return Ok(None) };
        let infinity = match (self.infinity, other.infinity) {
            (Some(a), Some(b)) => match f(a, b) {
                Some(v) => Some(v),
                None => return Ok(None),
            },
            _ => None,
        };
        Ok(Some(ValNet { shape: self.shape, support, tail, infinity }.normalized()))
    }

    /// `self - other`, when every component stays non-negative.
    pub fn checked_sub(&self, other: &ValNet) -> Result<Option<ValNet>, ValnetError> {
        self.combine(other, |a, b| (a >= b).then(|| a - b))
    }

    /// Componentwise minimum.
    pub fn meet(&self, other: &ValNet) -> Result<ValNet, ValnetError> {
        Ok(self.combine(other, |a, b| Some(a.min(b)))?.expect("min is total"))
    }

    pub fn length(&self) -> Length {
        if !self.tail.is_zero() {
            return Length::Infinite;
        }
        Length::Finite(self.entries().map(|(_, v)| v).sum())
    }

    /// Every value `v_M(b)` is below some common bound `eta`, given by
    /// [`ValNet::value_bound`]. A net has finitely many distinct values.
    pub fn is_bounded(&self) -> bool {
        !self.distinct_values().is_empty()
    }

    /// Least `eta` with every value `< eta`: one more than the largest value.
    pub fn value_bound(&self) -> Value {
        self.distinct_values().into_iter().max().unwrap_or_default() + Value::from_integer(1)
    }

    /// Some `delta > 0` sits below every nonzero value; `None` for the zero net.
    pub fn least_positive_value(&self) -> Option<Value> {
        self.distinct_values().into_iter().find(|v| !v.is_zero())
    }

    /// Bounded above, and bounded away from zero on the nonzero components.
    /// Vacuous for the zero net.
    pub fn is_uniformly_bounded(&self) -> bool {
        self.is_bounded() && self.least_positive_value().is_none_or(|d| d > Value::zero())
    }

    fn distinct_values(&self) -> BTreeSet<Value> {
        let mut values: BTreeSet<Value> = self.entries().map(|(_, v)| v).collect();
        if self.shape == Shape::Omega || self.support.len() < self.finite_len() {
            values.insert(self.tail);
        }
        values
    }

    fn finite_len(&self) -> usize {
        match self.shape {
            Shape::Finite(n) => n,
            Shape::Omega => usize::MAX,
        }
    }

    /// `Max(b)`: the maximal ideals at which `b` has positive value.
    pub fn max_of(&self) -> MaxSet {
        let listed = self.entries().filter(|(_, v)| !v.is_zero()).map(|(i, _)| i).collect();
        let excluded =
            if self.tail.is_zero() { Vec::new() } else { self.support.iter().filter(|(_, v)| v.is_zero()).map(|(&k, _)| k).collect() };
        MaxSet { listed, cofinite: !self.tail.is_zero(), excluded }
    }

    /// `Max(a)` and `Max(b)` share no maximal ideal.
    pub fn is_comaximal_with(&self, other: &ValNet) -> Result<bool, ValnetError> {
        Ok(self.meet(other)?.is_zero())
    }
}

/// A possibly infinite set of indices. When `cofinite` is set it also holds
/// every natural number outside the support except those in `excluded`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MaxSet {
    pub listed: BTreeSet<Index>,
    pub cofinite: bool,
    pub excluded: Vec<u64>,
}

impl MaxSet {
    pub fn contains(&self, index: Index) -> bool {
        match index {
            Index::At(n) if self.cofinite => !self.excluded.contains(&n),
            _ => self.listed.contains(&index),
        }
    }
}

impl fmt::Display for ValNet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.shape {
            Shape::Finite(len) => {
                f.write_str("(")?;
                for i in 0..len as u64 {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{}", self.value_at(Index::At(i)).unwrap_or_default())?;
                }
                f.write_str(")")
            }
            Shape::Omega => {
                for (k, v) in &self.support {
                    write!(f, "{k}:{v},")?;
                }
                write!(f, "tail:{},inf:{}", self.tail, self.infinity.unwrap_or_default())
            }
        }
    }
}

pub fn net_add(a: &ValNet, b: &ValNet) -> Result<ValNet, ValnetError> {
    Ok(a.combine(b, |x, y| Some(x + y))?.expect("addition is total"))
}

pub fn net_leq(a: &ValNet, b: &ValNet) -> Result<bool, ValnetError> {
    Ok(b.checked_sub(a)?.is_some())
}

/// `a <= b` with strict inequality somewhere.
pub fn net_lt(a: &ValNet, b: &ValNet) -> Result<bool, ValnetError> {
    Ok(net_leq(a, b)? && a != b)
}

/// Divisibility of the underlying elements, read off the order on nets.
pub fn divides(a: &ValNet, b: &ValNet) -> Result<bool, ValnetError> {
    net_leq(a, b)
}

/// Nets of the sequence domain: `q_n`, `omega_k` and `q = q_1 omega_1`.
pub mod sequence {
    use super::{ValNet, Value};

    /// The prime `q_n`: value 1 at `n` only.
    pub fn prime(n: u64) -> ValNet {
        ValNet::unit_at(n)
    }

    /// `omega_k`: value 0 at `1..=k`, value 1 at every later index and at infinity.
    pub fn omega(k: u64) -> ValNet {
        let one = Value::from_integer(1);
        ValNet::eventually_constant((1..=k).map(|n| (n, Value::from_integer(0))), one, one).expect("indices start at 1")
    }

    /// The base prime `q`: value 1 everywhere.
    pub fn base() -> ValNet {
        let one = Value::from_integer(1);
        ValNet::eventually_constant([], one, one).expect("no support")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(n: u64) -> Value {
        Value::from_integer(n)
    }

    #[test]
    fn arithmetic_examples() {
        let e1 = sequence::prime(1);
        let two_e1 = ValNet::eventually_constant([(1, v(2))], v(0), v(0)).unwrap();
        assert_eq!(net_add(&e1, &e1).unwrap(), two_e1);
        assert_eq!(net_add(&e1, &sequence::omega(1)).unwrap(), sequence::base());
        assert!(net_lt(&sequence::omega(2), &sequence::omega(1)).unwrap());
        assert!(!net_lt(&sequence::omega(1), &sequence::omega(1)).unwrap());
        let finite = ValNet::from_integers(&[1, 0]);
        assert_eq!(net_add(&finite, &e1), Err(ValnetError::IndexMismatch));
    }

    #[test]
    fn lengths() {
        assert_eq!(ValNet::from_integers(&[2, 3]).length(), Length::Finite(v(5)));
        assert_eq!(sequence::base().length(), Length::Infinite);
        assert_eq!(sequence::prime(4).length(), Length::Finite(v(1)));
    }

    #[test]
    fn boundedness() {
        let q = sequence::base();
        assert!(q.is_bounded());
        assert_eq!(q.value_bound(), v(2));
        let zero = ValNet::zero(Shape::Omega);
        assert!(zero.is_bounded() && zero.is_uniformly_bounded());
        let max = sequence::omega(2).max_of();
        assert!(max.contains(Index::At(3)) && max.contains(Index::Infinity));
        assert!(!max.contains(Index::At(2)));
    }

    #[test]
    fn display_round_trip() {
        let set = IndexSet::omega(ValueTag::Discrete);
        for net in [sequence::omega(3), sequence::base(), sequence::prime(2)] {
            assert_eq!(parse_net(&set, &net.to_string()).unwrap(), net);
        }
        let set = IndexSet::finite(vec![("a".into(), ValueTag::Dense), ("b".into(), ValueTag::Discrete)]).unwrap();
        let net = ValNet::finite([Value::new(1, 2), v(1)]);
        assert_eq!(net.to_string(), "(1/2,1)");
        assert_eq!(parse_net(&set, &net.to_string()).unwrap(), net);
        assert!(set.check(&ValNet::finite([v(1), Value::new(1, 2)])).is_err());
    }
}
