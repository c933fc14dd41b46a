//! Exhaustive factorization in reduced cancellative monoids.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::hash::Hash;
use std::rc::Rc;

use num_rational::Ratio;
use serde::Serialize;

use super::MonoidError;

/// Default number of element expansions a single factorization search may spend.
pub const DEFAULT_SEARCH_BUDGET: usize = 200_000;

/// What the factorization machinery needs to know about a reduced monoid.
///
/// Elements are canonical: two elements are associated exactly when they are
/// equal as `Elem` values, so the view has already divided out units.
pub trait MonoidView {
    type Elem: Clone + Ord + Hash + fmt::Debug;

    fn is_identity(&self, x: &Self::Elem) -> bool;

    fn op(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;

    /// `Some(c)` with `a * c = b`, when `a` divides `b`.
    fn quotient(&self, b: &Self::Elem, a: &Self::Elem) -> Option<Self::Elem>;

    fn divides(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        self.quotient(b, a).is_some()
    }

    /// Divisors of `x` other than the identity and `x` itself.
    fn proper_divisors(&self, x: &Self::Elem) -> Vec<Self::Elem>;

    /// Every non-identity element whose canonical size is at most `bound`,
    /// in a fixed order.
    fn window(&self, bound: u64) -> Vec<Self::Elem>;

    fn is_atom(&self, x: &Self::Elem) -> bool {
        !self.is_identity(x) && self.proper_divisors(x).is_empty()
    }
}

/// A factorization into atoms, stored as a sorted list of canonical atoms.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct FactorMultiset<E> {
    atoms: Vec<E>,
}

impl<E: Ord> FactorMultiset<E> {
    pub fn new(mut atoms: Vec<E>) -> Self {
        atoms.sort();
        FactorMultiset { atoms }
    }

    fn with(&self, atom: E) -> Self
    where
        E: Clone,
    {
        let pos = self.atoms.partition_point(|a| a < &atom);
        let mut atoms = self.atoms.clone();
        atoms.insert(pos, atom);
        FactorMultiset { atoms }
    }
}

impl<E> FactorMultiset<E> {
    pub fn atoms(&self) -> &[E] {
        &self.atoms
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    /// Multiplies the atoms back together.
    pub fn product<M: MonoidView<Elem = E>>(&self, m: &M) -> Option<E>
    where
        E: Clone,
    {
        let mut it = self.atoms.iter();
        let first = it.next()?.clone();
        Some(it.fold(first, |acc, a| m.op(&acc, a)))
    }
}

impl<E: fmt::Display> fmt::Display for FactorMultiset<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, a) in self.atoms.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{a}")?;
        }
        f.write_str("}")
    }
}

/// All factorizations of one element. `complete` is false when the search
/// budget ran out, in which case the set may be missing factorizations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorizationSet<E> {
    pub factorizations: BTreeSet<FactorMultiset<E>>,
    pub complete: bool,
}

impl<E: Ord> FactorizationSet<E> {
    pub fn lengths(&self) -> BTreeSet<usize> {
        self.factorizations.iter().map(FactorMultiset::len).collect()
    }

    pub fn is_empty(&self) -> bool {
        self.factorizations.is_empty()
    }

    pub fn len(&self) -> usize {
        self.factorizations.len()
    }

    /// Length set of a complete, nonempty factorization set.
    pub fn length_set(&self) -> Result<BTreeSet<usize>, MonoidError> {
        if !self.complete {
            return Err(MonoidError::Incomplete);
        }
        if self.factorizations.is_empty() {
            return Err(MonoidError::NotAtomic);
        }
        Ok(self.lengths())
    }

    /// `max / min` of the length set.
    pub fn elasticity(&self) -> Result<Ratio<u64>, MonoidError> {
        let lengths = self.length_set()?;
        let min = *lengths.first().unwrap() as u64;
        let max = *lengths.last().unwrap() as u64;
        Ok(Ratio::new(max, min))
    }
}

type Memo<E> = HashMap<E, Rc<BTreeSet<FactorMultiset<E>>>>;

/// Memoizing factorization engine; reuse one instance to share work across
/// many elements of the same monoid.
pub struct Factorizer<'m, M: MonoidView> {
    monoid: &'m M,
    memo: Memo<M::Elem>,
    atoms: HashMap<M::Elem, bool>,
    divisors: HashMap<M::Elem, Rc<Vec<M::Elem>>>,
    budget: usize,
    spent: usize,
    truncated: bool,
}

impl<'m, M: MonoidView> Factorizer<'m, M> {
    pub fn new(monoid: &'m M) -> Self {
        Self::with_budget(monoid, DEFAULT_SEARCH_BUDGET)
    }

    pub fn with_budget(monoid: &'m M, budget: usize) -> Self {
        Factorizer {
            monoid,
            memo: HashMap::new(),
            atoms: HashMap::new(),
            divisors: HashMap::new(),
            budget,
            spent: 0,
            truncated: false,
        }
    }

    pub fn monoid(&self) -> &'m M {
        self.monoid
    }

    fn proper_divisors(&mut self, x: &M::Elem) -> Rc<Vec<M::Elem>> {
        if let Some(d) = self.divisors.get(x) {
            return d.clone();
        }
        let d = Rc::new(self.monoid.proper_divisors(x));
        self.atoms.insert(x.clone(), d.is_empty());
        self.divisors.insert(x.clone(), d.clone());
        d
    }

    pub fn is_atom(&mut self, x: &M::Elem) -> bool {
        if self.monoid.is_identity(x) {
            return false;
        }
        if let Some(&a) = self.atoms.get(x) {
            return a;
        }
        self.proper_divisors(x).is_empty()
    }

    pub fn factorizations(&mut self, x: &M::Elem) -> Result<FactorizationSet<M::Elem>, MonoidError> {
        if self.monoid.is_identity(x) {
            return Err(MonoidError::IdentityElement);
        }
        self.truncated = false;
        self.spent = 0;
        let set = self.factor(x);
        Ok(FactorizationSet { factorizations: (*set).clone(), complete: !self.truncated })
    }

    fn factor(&mut self, x: &M::Elem) -> Rc<BTreeSet<FactorMultiset<M::Elem>>> {
        if let Some(done) = self.memo.get(x) {
            return done.clone();
        }
        if self.spent >= self.budget {
            self.truncated = true;
            return Rc::new(BTreeSet::new());
        }
        self.spent += 1;
        let divisors = self.proper_divisors(x);
        let mut out = BTreeSet::new();
        if divisors.is_empty() {
            out.insert(FactorMultiset { atoms: vec![x.clone()] });
        } else {
            for d in divisors.iter() {
                if !self.is_atom(d) {
                    continue;
                }
                let cofactor = self
                    .monoid
                    .quotient(x, d)
                    .expect("proper divisor must have a cofactor");
                for f in self.factor(&cofactor).iter() {
                    out.insert(f.with(d.clone()));
                }
            }
        }
        let out = Rc::new(out);
        if !self.truncated {
            self.memo.insert(x.clone(), out.clone());
        }
        out
    }
}

/// All factorizations of `x` into atoms, de-duplicated.
pub fn factorizations<M: MonoidView>(m: &M, x: &M::Elem) -> Result<FactorizationSet<M::Elem>, MonoidError> {
    Factorizer::new(m).factorizations(x)
}

pub fn length_set<M: MonoidView>(m: &M, x: &M::Elem) -> Result<BTreeSet<usize>, MonoidError> {
    factorizations(m, x)?.length_set()
}

pub fn elasticity_of_element<M: MonoidView>(m: &M, x: &M::Elem) -> Result<Ratio<u64>, MonoidError> {
    factorizations(m, x)?.elasticity()
}

/// Outcome of checking a predicate over every element of a finite window.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WindowVerdict<E> {
    pub holds: bool,
    pub bound: u64,
    /// First element (in window order) violating the predicate, with its factorizations.
    pub witness: Option<(E, Vec<FactorMultiset<E>>)>,
    /// False when some factorization search in the window ran out of budget.
    pub complete: bool,
}

/// Largest element elasticity seen in a window.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ElasticityWindow<E> {
    pub value: Ratio<u64>,
    pub bound: u64,
    /// First element attaining `value`, with its factorizations.
    pub witness: Option<(E, Vec<FactorMultiset<E>>)>,
    pub complete: bool,
}

/// Everything the window predicates need, computed in one pass.
#[derive(Clone, Debug)]
pub struct WindowSummary<E> {
    pub bound: u64,
    pub ufm: WindowVerdict<E>,
    pub hfm: WindowVerdict<E>,
    pub length_factorial: WindowVerdict<E>,
    pub elasticity: ElasticityWindow<E>,
}

pub fn window_summary<M: MonoidView>(m: &M, bound: u64) -> WindowSummary<M::Elem> {
    let mut fz = Factorizer::new(m);
    window_summary_with(&mut fz, bound)
}

pub fn window_summary_with<M: MonoidView>(fz: &mut Factorizer<'_, M>, bound: u64) -> WindowSummary<M::Elem> {
    let fresh = |bound| WindowVerdict { holds: true, bound, witness: None, complete: true };
    let mut ufm = fresh(bound);
    let mut hfm = fresh(bound);
    let mut lf = fresh(bound);
    let mut el = ElasticityWindow { value: Ratio::from_integer(1), bound, witness: None, complete: true };
    for x in fz.monoid().window(bound) {
        let set = fz.factorizations(&x).expect("window elements are not the identity");
        if !set.complete {
            for v in [&mut ufm, &mut hfm, &mut lf] {
                v.complete = false;
            }
            el.complete = false;
        }
        if set.is_empty() {
            continue;
        }
        let record = || (x.clone(), set.factorizations.iter().cloned().collect::<Vec<_>>());
        let lengths = set.lengths();
        if ufm.holds && set.len() > 1 {
            ufm.holds = false;
            ufm.witness = Some(record());
        }
        if hfm.holds && lengths.len() > 1 {
            hfm.holds = false;
            hfm.witness = Some(record());
        }
        if lf.holds && lengths.len() < set.len() {
            lf.holds = false;
            lf.witness = Some(record());
        }
        let rho = Ratio::new(*lengths.last().unwrap() as u64, *lengths.first().unwrap() as u64);
        if rho > el.value {
            el.value = rho;
            el.witness = Some(record());
        }
    }
    WindowSummary { bound, ufm, hfm, length_factorial: lf, elasticity: el }
}

pub fn is_ufm_window<M: MonoidView>(m: &M, bound: u64) -> WindowVerdict<M::Elem> {
    window_summary(m, bound).ufm
}

pub fn is_hfm_window<M: MonoidView>(m: &M, bound: u64) -> WindowVerdict<M::Elem> {
    window_summary(m, bound).hfm
}

pub fn is_length_factorial_window<M: MonoidView>(m: &M, bound: u64) -> WindowVerdict<M::Elem> {
    window_summary(m, bound).length_factorial
}

pub fn elasticity_window<M: MonoidView>(m: &M, bound: u64) -> ElasticityWindow<M::Elem> {
    window_summary(m, bound).elasticity
}
