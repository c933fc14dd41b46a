//! Ideal values with an infinitesimal flag.
//!
//! The value of an ideal `I` at `M` is `s = inf { v_M(b) : b in I }`, written
//! `s` when some element attains it and `s + eps` otherwise. Multiples of
//! `eps` are not told apart, and at a discrete index `s + eps` is the same
//! ideal as `s + 1`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::Zero;
use serde::Serialize;

use crate::report::display_string;

use super::{net_add, Index, IndexSet, NetMonoid, Shape, ValNet, ValnetError, Value, ValueTag};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct EpsVal {
    #[serde(serialize_with = "display_string")]
    pub gamma: Value,
    /// False encodes `gamma + eps`.
    pub attained: bool,
}

impl EpsVal {
    pub fn attained(gamma: Value) -> Self {
        EpsVal { gamma, attained: true }
    }

    pub fn above(gamma: Value) -> Self {
        EpsVal { gamma, attained: false }
    }

    /// At a discrete index the value group is `Z`, so `gamma + eps` becomes
    /// the next integer.
    pub fn normalized(self, tag: ValueTag) -> Self {
        match (tag, self.attained) {
            (ValueTag::Discrete, false) => EpsVal::attained(self.gamma.floor() + Value::from_integer(1)),
            (ValueTag::Discrete, true) => EpsVal::attained(self.gamma.ceil()),
            (ValueTag::Dense, _) => self,
        }
    }
}

impl fmt::Display for EpsVal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.attained {
            write!(f, "{}", self.gamma)
        } else {
            write!(f, "{}+eps", self.gamma)
        }
    }
}

/// Gammas add; the sum is attained only when both summands are.
pub fn eps_add(x: EpsVal, y: EpsVal, tag: ValueTag) -> EpsVal {
    EpsVal { gamma: x.gamma + y.gamma, attained: x.attained && y.attained }.normalized(tag)
}

/// An ideal, given by generators or by a value threshold at one index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Ideal {
    Generated(Vec<ValNet>),
    /// `{ b : v_index(b) >= gamma }`, or `> gamma` when `strict`.
    Threshold { index: Index, gamma: Value, strict: bool },
}

/// The values `v_M(I)` of an ideal at every maximal ideal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdealNorm {
    pub shape: Shape,
    pub support: BTreeMap<u64, EpsVal>,
    /// Value at every natural number outside `support` (omega shape only; zero otherwise).
    pub tail: EpsVal,
    pub infinity: Option<EpsVal>,
}

impl IdealNorm {
    pub fn value_at(&self, index: Index) -> Option<EpsVal> {
        match (self.shape, index) {
            (Shape::Finite(len), Index::At(i)) if (i as usize) < len => {
                Some(self.support.get(&i).copied().unwrap_or(EpsVal::attained(Value::zero())))
            }
            (Shape::Omega, Index::At(n)) if n >= 1 => Some(self.support.get(&n).copied().unwrap_or(self.tail)),
            (Shape::Omega, Index::Infinity) => self.infinity,
            _ => None,
        }
    }

    /// Every stored value, each with its index (the tail is listed under `None`).
    fn stored(&self) -> impl Iterator<Item = (Option<Index>, EpsVal)> + '_ {
        let listed = self.support.iter().map(|(&k, &v)| (Some(Index::At(k)), v));
        let tail = (self.shape == Shape::Omega).then_some((None, self.tail));
        listed.chain(tail).chain(self.infinity.map(|v| (Some(Index::Infinity), v)))
    }

    /// No discrete index holds an unattained value.
    pub fn is_normalized(&self, index_set: &IndexSet) -> bool {
        self.stored().all(|(i, v)| v.attained || index_set.tag(i.unwrap_or(Index::At(1))) == ValueTag::Dense)
    }

    fn from_net(net: &ValNet) -> Self {
        let support = net.entries().filter_map(|(i, v)| match i {
            Index::At(k) => Some((k, EpsVal::attained(v))),
            Index::Infinity => None,
        });
        IdealNorm {
            shape: net.shape(),
            support: support.collect(),
            tail: EpsVal::attained(net.tail()),
            infinity: net.infinity().map(EpsVal::attained),
        }
    }

    /// Componentwise [`eps_add`].
    pub fn add(&self, other: &IdealNorm, index_set: &IndexSet) -> Result<IdealNorm, ValnetError> {
        if self.shape != other.shape {
            return Err(ValnetError::IndexMismatch);
        }
        let keys: BTreeSet<u64> = self.support.keys().chain(other.support.keys()).copied().collect();
        let mut support = BTreeMap::new();
        for k in keys {
            let index = Index::At(k);
            let (a, b) = (self.value_at(index).expect("in shape"), other.value_at(index).expect("in shape"));
            support.insert(k, eps_add(a, b, index_set.tag(index)));
        }
        let tail = eps_add(self.tail, other.tail, ValueTag::Discrete);
        let infinity = match (self.infinity, other.infinity) {
            (Some(a), Some(b)) => Some(eps_add(a, b, index_set.tag(Index::Infinity))),
            _ => None,
        };
        Ok(IdealNorm { shape: self.shape, support, tail, infinity }.compacted())
    }

    fn compacted(mut self) -> Self {
        let tail = self.tail;
        let zero = EpsVal::attained(Value::zero());
        let shape = self.shape;
        self.support.retain(|_, v| if shape == Shape::Omega { *v != tail } else { *v != zero });
        self
    }
}

/// `v_M(I)` at every maximal ideal.
///
/// A finitely generated ideal attains the least generator value at each
/// index. A threshold ideal `{ v_i >= gamma }` (or `> gamma`) has value
/// `gamma` (or `gamma + eps`) at `i` and `0` elsewhere, taking for granted
/// that elements can be chosen with prescribed values at finitely many
/// indices, as in a Prüfer domain of finite character.
pub fn ideal_norm(m: &NetMonoid, ideal: &Ideal) -> Result<IdealNorm, ValnetError> {
    let index_set = m.index_set();
    match ideal {
        Ideal::Generated(gens) => {
            let (first, rest) = gens.split_first().ok_or(ValnetError::EmptyIdeal)?;
            for g in gens {
                if !m.contains(g)? {
                    return Err(ValnetError::NotInMonoid(g.to_string()));
                }
            }
            let mut low = first.clone();
            for g in rest {
                low = low.meet(g)?;
            }
            Ok(IdealNorm::from_net(&low))
        }
        Ideal::Threshold { index, gamma, strict } => {
            let shape = index_set.shape();
            let zero = EpsVal::attained(Value::zero());
            let value = EpsVal { gamma: *gamma, attained: !strict }.normalized(index_set.tag(*index));
            let mut norm = IdealNorm {
                shape,
                support: BTreeMap::new(),
                tail: zero,
                infinity: (shape == Shape::Omega).then_some(zero),
            };
            match index {
                Index::At(k) => {
                    if ValNet::zero(shape).value_at(*index).is_none() {
                        return Err(ValnetError::IndexMismatch);
                    }
                    norm.support.insert(*k, value);
                }
                Index::Infinity if shape == Shape::Omega => norm.infinity = Some(value),
                Index::Infinity => return Err(ValnetError::IndexMismatch),
            }
            Ok(norm.compacted())
        }
    }
}

/// Checks `v_M(IJ) = v_M(I) + v_M(J)` at every index, with `IJ` generated by
/// all sums of a generator of `I` and a generator of `J`.
pub fn ideal_norm_product_check(m: &NetMonoid, i: &[ValNet], j: &[ValNet]) -> Result<bool, ValnetError> {
    let mut product = Vec::with_capacity(i.len() * j.len());
    for a in i {
        for b in j {
            product.push(net_add(a, b)?);
        }
    }
    let lhs = ideal_norm(m, &Ideal::Generated(product))?;
    let rhs = ideal_norm(m, &Ideal::Generated(i.to_vec()))?.add(&ideal_norm(m, &Ideal::Generated(j.to_vec()))?, m.index_set())?;
    Ok(lhs == rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::valnet::sequence;

    fn v(n: u64) -> Value {
        Value::from_integer(n)
    }

    #[test]
    fn eps_examples() {
        let (t, f) = (true, false);
        assert_eq!(eps_add(EpsVal { gamma: v(3), attained: t }, EpsVal { gamma: v(2), attained: t }, ValueTag::Dense), EpsVal::attained(v(5)));
        assert_eq!(eps_add(EpsVal::above(v(1)), EpsVal::above(v(1)), ValueTag::Dense), EpsVal::above(v(2)));
        assert_eq!(eps_add(EpsVal { gamma: v(0), attained: f }, EpsVal::attained(v(0)), ValueTag::Discrete), EpsVal::attained(v(1)));
    }

    #[test]
    fn sequence_domain_ideals() {
        let m = NetMonoid::sequence_domain();
        // the non-finitely generated maximal ideal: values 0 at every q_n, 1 at infinity
        let big = ideal_norm(&m, &Ideal::Threshold { index: Index::Infinity, gamma: v(1), strict: false }).unwrap();
        assert_eq!(big.value_at(Index::At(7)), Some(EpsVal::attained(v(0))));
        assert_eq!(big.value_at(Index::Infinity), Some(EpsVal::attained(v(1))));
        let strict = ideal_norm(&m, &Ideal::Threshold { index: Index::Infinity, gamma: v(0), strict: true }).unwrap();
        assert_eq!(strict, big);
        let i = [sequence::omega(1), sequence::prime(1)];
        let j = [sequence::omega(3)];
        assert!(ideal_norm_product_check(&m, &i, &j).unwrap());
    }

    #[test]
    fn dense_threshold_is_not_attained() {
        let set = IndexSet::finite(vec![("D".into(), ValueTag::Dense), ("Z".into(), ValueTag::Discrete)]).unwrap();
        let m = NetMonoid::generated(set.clone(), vec![ValNet::finite([Value::new(1, 2), v(1)])]).unwrap();
        let norm = ideal_norm(&m, &Ideal::Threshold { index: Index::At(0), gamma: v(1), strict: true }).unwrap();
        assert_eq!(norm.value_at(Index::At(0)), Some(EpsVal::above(v(1))));
        assert!(norm.is_normalized(&set));
        let norm = ideal_norm(&m, &Ideal::Threshold { index: Index::At(1), gamma: v(1), strict: true }).unwrap();
        assert_eq!(norm.value_at(Index::At(1)), Some(EpsVal::attained(v(2))));
    }
}
