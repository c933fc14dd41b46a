//! Monoids of nets and depth-limited factorization searches.

use std::collections::{BTreeSet, VecDeque};

use num_integer::Integer;
use num_traits::Zero;
use serde::Serialize;

use super::{net_add, Index, IndexSet, Length, Shape, ValNet, ValnetError, Value, ValueTag};
use crate::monoid::{FactorMultiset, FactorizationSet, Factorizer, MonoidView};

/// Outcome of a search that may run out of depth.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", content = "value", rename_all = "snake_case")]
pub enum Search<T> {
    Found(T),
    /// The search was exhaustive and nothing exists.
    Absent,
    /// Nothing was found, but the search stopped at `depth`.
    DepthExhausted(usize),
}

impl<T> Search<T> {
    pub fn found(&self) -> Option<&T> {
        match self {
            Search::Found(x) => Some(x),
            _ => None,
        }
    }

    pub fn is_depth_exhausted(&self) -> bool {
        matches!(self, Search::DepthExhausted(_))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MonoidDescription {
    /// Finite sums of the listed nonzero nets.
    Generated(Vec<ValNet>),
    /// Eventually constant nets over the natural numbers whose value at
    /// infinity equals their tail value.
    SequenceDomain,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NetMonoid {
    index_set: IndexSet,
    description: MonoidDescription,
}

impl NetMonoid {
    pub fn generated(index_set: IndexSet, generators: Vec<ValNet>) -> Result<Self, ValnetError> {
        if generators.is_empty() {
            return Err(ValnetError::InvalidNet("a generated monoid needs generators".into()));
        }
        for g in &generators {
            index_set.check(g)?;
            if g.is_zero() {
                return Err(ValnetError::InvalidNet("the zero net is a unit, not a generator".into()));
            }
        }
        let generators: Vec<ValNet> = generators.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
        Ok(NetMonoid { index_set, description: MonoidDescription::Generated(generators) })
    }

    pub fn sequence_domain() -> Self {
        NetMonoid { index_set: IndexSet::omega(ValueTag::Discrete), description: MonoidDescription::SequenceDomain }
    }

    pub(crate) fn from_parts(index_set: IndexSet, description: MonoidDescription) -> Result<Self, ValnetError> {
        match description {
            MonoidDescription::Generated(gens) => Self::generated(index_set, gens),
            MonoidDescription::SequenceDomain if index_set.shape() == Shape::Omega => {
                Ok(NetMonoid { index_set, description: MonoidDescription::SequenceDomain })
            }
            MonoidDescription::SequenceDomain => {
                Err(ValnetError::InvalidNet("the sequence domain lives on the omega index set".into()))
            }
        }
    }

    pub fn index_set(&self) -> &IndexSet {
        &self.index_set
    }

    pub fn description(&self) -> &MonoidDescription {
        &self.description
    }

    fn generators(&self) -> Option<&[ValNet]> {
        match &self.description {
            MonoidDescription::Generated(g) => Some(g),
            MonoidDescription::SequenceDomain => None,
        }
    }

    pub fn contains(&self, x: &ValNet) -> Result<bool, ValnetError> {
        self.index_set.check(x)?;
        Ok(match self.generators() {
            Some(gens) => elements_below(gens, x).contains(x),
            None => x.infinity() == Some(x.tail()),
        })
    }

    fn require(&self, x: &ValNet) -> Result<(), ValnetError> {
        if self.contains(x)? {
            Ok(())
        } else {
            Err(ValnetError::NotInMonoid(x.to_string()))
        }
    }

    /// Generators that are not sums of other generators.
    pub fn atoms(&self) -> Result<Vec<ValNet>, ValnetError> {
        let gens = self.generators().ok_or(ValnetError::NeedsGenerated)?;
        let view = Generated { gens };
        Ok(gens.iter().filter(|g| view.proper_divisors(g).is_empty()).cloned().collect())
    }
}

/// Every monoid element `<= x`, by breadth-first sums of generators.
fn elements_below(gens: &[ValNet], x: &ValNet) -> BTreeSet<ValNet> {
    let zero = ValNet::zero(x.shape());
    let mut seen = BTreeSet::from([zero.clone()]);
    let mut queue = VecDeque::from([zero]);
    while let Some(y) = queue.pop_front() {
        for g in gens {
            let z = net_add(&y, g).expect("generators share the shape");
            if !seen.contains(&z) && x.checked_sub(&z).expect("same shape").is_some() {
                seen.insert(z.clone());
                queue.push_back(z);
            }
        }
    }
    seen
}

/// A generated monoid seen through the generic factorization machinery.
struct Generated<'a> {
    gens: &'a [ValNet],
}

impl MonoidView for Generated<'_> {
    type Elem = ValNet;

    fn is_identity(&self, x: &ValNet) -> bool {
        x.is_zero()
    }

    fn op(&self, a: &ValNet, b: &ValNet) -> ValNet {
        net_add(a, b).expect("same shape")
    }

    fn quotient(&self, b: &ValNet, a: &ValNet) -> Option<ValNet> {
        let c = b.checked_sub(a).ok()??;
        elements_below(self.gens, &c).contains(&c).then_some(c)
    }

    fn proper_divisors(&self, x: &ValNet) -> Vec<ValNet> {
        let below = elements_below(self.gens, x);
        below
            .iter()
            .filter(|d| !d.is_zero() && *d != x)
            .filter(|d| below.contains(&x.checked_sub(d).expect("same shape").expect("d <= x")))
            .cloned()
            .collect()
    }

    /// Elements of finite length at most `bound`, by length.
    fn window(&self, bound: u64) -> Vec<ValNet> {
        let cap = Length::Finite(Value::from_integer(bound));
        let gens: Vec<&ValNet> = self.gens.iter().filter(|g| g.length() <= cap).collect();
        let Some(first) = gens.first() else { return Vec::new() };
        let zero = ValNet::zero(first.shape());
        let mut seen = BTreeSet::from([zero.clone()]);
        let mut queue = VecDeque::from([zero]);
        while let Some(y) = queue.pop_front() {
            for g in &gens {
                let z = net_add(&y, g).expect("same shape");
                if z.length() <= cap && seen.insert(z.clone()) {
                    queue.push_back(z);
                }
            }
        }
        let mut out: Vec<ValNet> = seen.into_iter().filter(|z| !z.is_zero()).collect();
        out.sort_by(|a, b| a.length().cmp(&b.length()).then_with(|| a.cmp(b)));
        out
    }
}

/// Every factorization of `b` in a generated monoid.
pub fn all_factorizations(m: &NetMonoid, b: &ValNet) -> Result<FactorizationSet<ValNet>, ValnetError> {
    let gens = m.generators().ok_or(ValnetError::NeedsGenerated)?;
    m.require(b)?;
    if b.is_zero() {
        return Err(ValnetError::InvalidNet("the zero net is a unit".into()));
    }
    let view = Generated { gens };
    Ok(Factorizer::new(&view).factorizations(b).expect("nonzero element"))
}

/// Lengths of the nonunit divisors of `b`. For the sequence domain only
/// divisors supported on `1..=depth` are visited.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LengthSet {
    pub lengths: BTreeSet<Length>,
    pub complete: bool,
}

pub fn s_b(m: &NetMonoid, b: &ValNet, depth: usize) -> Result<LengthSet, ValnetError> {
    m.require(b)?;
    let Some(gens) = m.generators() else {
        // a divisor with tail 0 supported on 1..=depth has any length from 1 up to the mass there
        let mass: Value = (1..=depth as u64).map(|n| b.value_at(Index::At(n)).unwrap_or_default()).sum();
        let mut lengths: BTreeSet<Length> =
            (1..=mass.to_integer()).map(|k| Length::Finite(Value::from_integer(k))).collect();
        if !b.tail().is_zero() {
            lengths.insert(Length::Infinite);
        }
        let complete = b.tail().is_zero() && b.support_end() <= depth as u64;
        return Ok(LengthSet { lengths, complete });
    };
    let view = Generated { gens };
    let mut lengths: BTreeSet<Length> = view.proper_divisors(b).iter().map(ValNet::length).collect();
    if !b.is_zero() {
        lengths.insert(b.length());
    }
    Ok(LengthSet { lengths, complete: true })
}

/// `inf S_b` over the divisors [`s_b`] visits.
pub fn inf_s_b(m: &NetMonoid, b: &ValNet, depth: usize) -> Result<Option<Length>, ValnetError> {
    Ok(s_b(m, b, depth)?.lengths.first().copied())
}

/// `ceil(|b| / inf S_b)`, a bound on factorization lengths, when both are finite and positive.
pub fn bfd_bound(m: &NetMonoid, b: &ValNet, depth: usize) -> Result<Option<u64>, ValnetError> {
    let (Length::Finite(total), Some(Length::Finite(least))) = (b.length(), inf_s_b(m, b, depth)?) else {
        return Ok(None);
    };
    if least.is_zero() {
        return Ok(None);
    }
    let q = total / least;
    Ok(Some(Integer::div_ceil(q.numer(), q.denom())))
}

/// One factorization of `b` into atoms.
///
/// Generated monoids are searched exhaustively. In the sequence domain the
/// atoms are the primes `q_n`; the search peels off those with `n <= depth`.
pub fn find_atomic_factorization(
    m: &NetMonoid,
    b: &ValNet,
    depth: usize,
) -> Result<Search<FactorMultiset<ValNet>>, ValnetError> {
    if m.generators().is_some() {
        let set = all_factorizations(m, b)?;
        return Ok(match set.factorizations.into_iter().next() {
            Some(f) => Search::Found(f),
            None => Search::Absent,
        });
    }
    m.require(b)?;
    let mut rest = b.clone();
    let mut atoms = Vec::new();
    for n in 1..=depth as u64 {
        let atom = ValNet::unit_at(n);
        while let Some(r) = rest.checked_sub(&atom)? {
            rest = r;
            atoms.push(atom.clone());
        }
    }
    Ok(if rest.is_zero() && !atoms.is_empty() { Search::Found(FactorMultiset::new(atoms)) } else { Search::DepthExhausted(depth) })
}

/// A chain `b = d_1 > d_2 > ... > d_k` of nonunits, each a proper divisor of
/// the previous one, i.e. `k` strictly ascending principal ideals.
pub fn accp_chain(m: &NetMonoid, b: &ValNet, k: usize) -> Result<Option<Vec<ValNet>>, ValnetError> {
    m.require(b)?;
    if b.is_zero() || k == 0 {
        return Ok(None);
    }
    if m.generators().is_some() {
        // the longest factorization yields the longest chain
        let set = all_factorizations(m, b)?;
        let Some(longest) = set.factorizations.iter().max_by_key(|f| f.len()) else { return Ok(None) };
        if longest.len() < k {
            return Ok(None);
        }
        let mut chain = vec![b.clone()];
        let mut cur = b.clone();
        for atom in &longest.atoms()[..k - 1] {
            cur = cur.checked_sub(atom)?.expect("atom divides the remainder");
            chain.push(cur.clone());
        }
        return Ok(Some(chain));
    }
    // remove the prime at the first index where the net is positive
    let mut chain = vec![b.clone()];
    let mut cur = b.clone();
    while chain.len() < k {
        let first = (1..=cur.support_end() + 1).find(|&n| cur.value_at(Index::At(n)).is_some_and(|v| !v.is_zero()));
        let Some(n) = first else { return Ok(None) };
        cur = cur.checked_sub(&ValNet::unit_at(n))?.expect("positive at n");
        if cur.is_zero() {
            return Ok(None);
        }
        chain.push(cur.clone());
    }
    Ok(Some(chain))
}

/// Nonunit divisors of `b` in a generated monoid, `b` included.
fn generated_divisors(gens: &[ValNet], b: &ValNet) -> Vec<ValNet> {
    let mut out = Generated { gens }.proper_divisors(b);
    out.push(b.clone());
    out
}

/// Primes `q_n` with `n <= depth` dividing `b`.
fn sequence_prime_divisors(b: &ValNet, depth: usize) -> Vec<ValNet> {
    (1..=depth as u64).filter(|&n| b.value_at(Index::At(n)).is_some_and(|v| !v.is_zero())).map(ValNet::unit_at).collect()
}

/// Whether `b`'s divisors in the sequence domain all lie within `1..=depth`.
fn sequence_scan_complete(b: &ValNet, depth: usize) -> bool {
    b.tail().is_zero() && b.support_end() <= depth as u64
}

/// `k` pairwise comaximal nonunit divisors of `b`.
pub fn comaximal_family(m: &NetMonoid, b: &ValNet, k: usize, depth: usize) -> Result<Search<Vec<ValNet>>, ValnetError> {
    m.require(b)?;
    let (candidates, complete) = match m.generators() {
        Some(gens) => (generated_divisors(gens, b), true),
        None => (sequence_prime_divisors(b, depth), sequence_scan_complete(b, depth)),
    };
    let mut picked = Vec::new();
    if pick_comaximal(&candidates, 0, k, &mut picked)? {
        return Ok(Search::Found(picked));
    }
    Ok(if complete { Search::Absent } else { Search::DepthExhausted(depth) })
}

fn pick_comaximal(cands: &[ValNet], start: usize, k: usize, picked: &mut Vec<ValNet>) -> Result<bool, ValnetError> {
    if picked.len() == k {
        return Ok(true);
    }
    for i in start..cands.len() {
        let mut ok = true;
        for p in picked.iter() {
            if !cands[i].is_comaximal_with(p)? {
                ok = false;
                break;
            }
        }
        if ok {
            picked.push(cands[i].clone());
            if pick_comaximal(cands, i + 1, k, picked)? {
                return Ok(true);
            }
            picked.pop();
        }
    }
    Ok(false)
}

/// Every nonunit divisor of `b` (within depth) lies in one of the `candidate` maximal ideals.
///
/// In the sequence domain every nonunit divisor is divisible by some prime
/// `q_n`, so checking those primes and `b` itself suffices.
pub fn finite_cover_check(m: &NetMonoid, b: &ValNet, candidate: &[Index], depth: usize) -> Result<bool, ValnetError> {
    m.require(b)?;
    let divisors = match m.generators() {
        Some(gens) => generated_divisors(gens, b),
        None => {
            let mut d = sequence_prime_divisors(b, depth);
            d.push(b.clone());
            d
        }
    };
    let covered = |d: &ValNet| candidate.iter().any(|&i| d.value_at(i).is_some_and(|v| !v.is_zero()));
    Ok(divisors.iter().filter(|d| !d.is_zero()).all(covered))
}

/// Every element positive at a dense (idempotent) index is also positive at
/// some discrete index.
pub fn idempotent_cover_check(m: &NetMonoid) -> bool {
    let dense = m.index_set.dense_indices();
    let positive = |g: &ValNet, i: Index| g.value_at(i).is_some_and(|v| !v.is_zero());
    match m.generators() {
        // a sum is positive at an index exactly when some summand is
        Some(gens) => gens.iter().all(|g| {
            let at_dense = dense.iter().any(|&i| positive(g, i));
            let at_discrete = g.entries().any(|(i, v)| !v.is_zero() && !dense.contains(&i)) || !g.tail().is_zero();
            !at_dense || at_discrete
        }),
        // positive at infinity means a positive tail, hence positive at natural numbers
        None => true,
    }
}

/// Number of nonunit divisors of `b`, or depth exhaustion when the scan
/// cannot see all of them.
pub fn ffd_window(m: &NetMonoid, b: &ValNet, depth: usize) -> Result<Search<usize>, ValnetError> {
    m.require(b)?;
    match m.generators() {
        Some(gens) => Ok(Search::Found(generated_divisors(gens, b).len())),
        None if sequence_scan_complete(b, depth) => {
            let count: u64 = b.entries().map(|(_, v)| v.to_integer() + 1).product();
            Ok(Search::Found(count as usize - 1))
        }
        None => Ok(Search::DepthExhausted(depth)),
    }
}
