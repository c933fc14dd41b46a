//! Finite abelian groups in invariant-factor form and their Davenport constants.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use super::MonoidError;
use crate::arith::factorize;

/// Largest group order the Davenport search accepts unless told otherwise.
pub const DEFAULT_DAVENPORT_CAP: u64 = 64;

/// A finite abelian group `Z_{d1} x ... x Z_{dk}` with `d1 | d2 | ... | dk`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct AbelianGroup {
    invariant_factors: Vec<u64>,
}

impl AbelianGroup {
    pub fn trivial() -> Self {
        AbelianGroup { invariant_factors: Vec::new() }
    }

    pub fn cyclic(n: u64) -> Self {
        Self::from_cyclic_orders(&[n])
    }

    /// Validates an invariant-factor list: every factor `>= 2`, each dividing the next.
    pub fn new(invariant_factors: Vec<u64>) -> Result<Self, MonoidError> {
        if let Some(&d) = invariant_factors.iter().find(|&&d| d < 2) {
            return Err(MonoidError::InvalidGroup(format!("invariant factor {d} is below 2")));
        }
        for w in invariant_factors.windows(2) {
            if w[1] % w[0] != 0 {
                return Err(MonoidError::InvalidGroup(format!(
                    "{} does not divide {}",
                    w[0], w[1]
                )));
            }
        }
        Ok(AbelianGroup { invariant_factors })
    }

    /// Normal form of `Z_{n1} x Z_{n2} x ...` for arbitrary orders (1s are dropped).
    pub fn from_cyclic_orders(orders: &[u64]) -> Self {
        let mut primary: BTreeMap<u64, Vec<u32>> = BTreeMap::new();
        for &n in orders {
            assert!(n >= 1, "cyclic factor of order 0");
            for (p, e) in factorize(n) {
                primary.entry(p).or_default().push(e);
            }
        }
        Self::from_primary_parts(primary)
    }

    fn from_primary_parts(mut primary: BTreeMap<u64, Vec<u32>>) -> Self {
        let rank = primary.values().map(Vec::len).max().unwrap_or(0);
        let mut factors = vec![1u64; rank];
        for (p, exps) in primary.iter_mut() {
            exps.sort_unstable_by(|a, b| b.cmp(a));
            for (slot, &e) in exps.iter().enumerate() {
                factors[slot] *= p.pow(e);
            }
        }
        factors.reverse();
        AbelianGroup { invariant_factors: factors }
    }

    /// Structure of the group given by a Cayley table over `0..n`.
    ///
    /// The table must be an abelian group table with identity `identity`;
    /// only element orders are inspected.
    pub fn from_cayley_table(table: &[Vec<usize>], identity: usize) -> Self {
        let n = table.len();
        let orders: Vec<u64> = (0..n)
            .map(|x| {
                let mut acc = x;
                let mut k = 1;
                while acc != identity {
                    acc = table[acc][x];
                    k += 1;
                    assert!(k <= n as u64 + 1, "element {x} has no finite order in table");
                }
                k
            })
            .collect();
        let mut primary = BTreeMap::new();
        for (p, _) in factorize(n as u64) {
            // log_p #{x : p^k x = 0} = sum_i min(k, lambda_i)
            let mut counts = vec![0u32];
            let mut pk = 1u64;
            loop {
                pk *= p;
                let c = orders.iter().filter(|&&o| pk.is_multiple_of(o)).count() as u64;
                let s = log_exact(c, p);
                if s == *counts.last().unwrap() {
                    break;
                }
                counts.push(s);
            }
            // number of parts >= k is counts[k] - counts[k-1]
            let at_least: Vec<u32> = counts.windows(2).map(|w| w[1] - w[0]).collect();
            let mut parts = Vec::new();
            for (k, &cnt) in at_least.iter().enumerate() {
                let next = at_least.get(k + 1).copied().unwrap_or(0);
                for _ in 0..(cnt - next) {
                    parts.push(k as u32 + 1);
                }
            }
            primary.insert(p, parts);
        }
        Self::from_primary_parts(primary)
    }

    pub fn invariant_factors(&self) -> &[u64] {
        &self.invariant_factors
    }

    pub fn order(&self) -> u64 {
        self.invariant_factors.iter().product()
    }

    /// Largest element order (1 for the trivial group).
    pub fn exponent(&self) -> u64 {
        self.invariant_factors.last().copied().unwrap_or(1)
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty()
    }

    /// Coordinates of the element with mixed-radix index `idx`.
    pub fn coordinates(&self, mut idx: usize) -> Vec<u64> {
        self.invariant_factors
            .iter()
            .map(|&d| {
                let c = idx as u64 % d;
                idx /= d as usize;
                c
            })
            .collect()
    }

    fn index_of(&self, coords: &[u64]) -> usize {
        let mut idx = 0usize;
        let mut scale = 1usize;
        for (&c, &d) in coords.iter().zip(&self.invariant_factors) {
            idx += c as usize * scale;
            scale *= d as usize;
        }
        idx
    }

    fn addition_table(&self) -> Vec<Vec<usize>> {
        let n = self.order() as usize;
        let coords: Vec<Vec<u64>> = (0..n).map(|i| self.coordinates(i)).collect();
        (0..n)
            .map(|x| {
                (0..n)
                    .map(|y| {
                        let sum: Vec<u64> = coords[x]
                            .iter()
                            .zip(&coords[y])
                            .zip(&self.invariant_factors)
                            .map(|((a, b), d)| (a + b) % d)
                            .collect();
                        self.index_of(&sum)
                    })
                    .collect()
            })
            .collect()
    }
}

fn log_exact(mut c: u64, p: u64) -> u32 {
    let mut k = 0;
    while c > 1 {
        assert_eq!(c % p, 0, "subgroup count is not a power of {p}");
        c /= p;
        k += 1;
    }
    k
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.invariant_factors.is_empty() {
            return f.write_str("trivial");
        }
        let parts: Vec<String> = self.invariant_factors.iter().map(|d| format!("Z_{d}")).collect();
        f.write_str(&parts.join(" x "))
    }
}

/// Davenport constant together with a longest zero-sum-free sequence.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DavenportCertificate {
    pub value: u64,
    /// Zero-sum-free sequence of length `value - 1`, elements as coordinates.
    pub witness: Vec<Vec<u64>>,
}

pub fn davenport(g: &AbelianGroup) -> Result<DavenportCertificate, MonoidError> {
    davenport_with_cap(g, DEFAULT_DAVENPORT_CAP)
}

/// Smallest `n` such that every length-`n` sequence over `g` has a nonempty
/// zero-sum subsequence, by exhaustive search over multisets.
pub fn davenport_with_cap(g: &AbelianGroup, cap: u64) -> Result<DavenportCertificate, MonoidError> {
    let order = g.order();
    if order > cap {
        return Err(MonoidError::CapExceeded { order, cap });
    }
    let table = g.addition_table();
    let mut witness: Vec<usize> = Vec::new();
    let mut n = 1u64;
    loop {
        let mut seq = Vec::with_capacity(n as usize);
        let sums = Bitset::new(order as usize);
        if search_zero_sum_free(&table, n as usize, 1, &sums, &mut seq) {
            witness = seq;
            n += 1;
        } else {
            return Ok(DavenportCertificate {
                value: n,
                witness: witness.into_iter().map(|x| g.coordinates(x)).collect(),
            });
        }
    }
}

/// Depth-first search for a zero-sum-free multiset of size `remaining` using
/// elements `>= start`; `sums` holds all nonempty subsequence sums so far.
fn search_zero_sum_free(
    table: &[Vec<usize>],
    remaining: usize,
    start: usize,
    sums: &Bitset,
    seq: &mut Vec<usize>,
) -> bool {
    if remaining == 0 {
        return true;
    }
    for x in start..table.len() {
        // x itself, and every old sum shifted by x
        let mut next = sums.clone();
        next.insert(x);
        let mut hits_zero = x == 0;
        for s in sums.iter() {
            let t = table[s][x];
            if t == 0 {
                hits_zero = true;
                break;
            }
            next.insert(t);
        }
        if hits_zero {
            continue;
        }
        seq.push(x);
        if search_zero_sum_free(table, remaining - 1, x, &next, seq) {
            return true;
        }
        seq.pop();
    }
    false
}

#[derive(Clone)]
struct Bitset {
    words: Vec<u64>,
}

impl Bitset {
    fn new(n: usize) -> Self {
        Bitset { words: vec![0; n.div_ceil(64)] }
    }

    fn insert(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(w, &bits)| {
            (0..64).filter(move |b| bits >> b & 1 == 1).map(move |b| w * 64 + b)
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn invariant_factor_normal_form() {
        assert_eq!(AbelianGroup::from_cyclic_orders(&[2, 3]).invariant_factors(), &[6]);
        assert_eq!(AbelianGroup::from_cyclic_orders(&[4, 2]).invariant_factors(), &[2, 4]);
        assert_eq!(AbelianGroup::from_cyclic_orders(&[6, 4]).invariant_factors(), &[2, 12]);
        assert!(AbelianGroup::from_cyclic_orders(&[1, 1]).is_trivial());
        assert_eq!(AbelianGroup::new(vec![2, 4]).unwrap().to_string(), "Z_2 x Z_4");
        assert!(AbelianGroup::new(vec![4, 2]).is_err());
        assert!(AbelianGroup::new(vec![1]).is_err());
    }

    #[test]
    fn structure_from_table() {
        for g in [
            AbelianGroup::trivial(),
            AbelianGroup::cyclic(8),
            AbelianGroup::new(vec![2, 4]).unwrap(),
            AbelianGroup::new(vec![2, 2, 2]).unwrap(),
            AbelianGroup::new(vec![3, 6]).unwrap(),
        ] {
            let table = g.addition_table();
            assert_eq!(AbelianGroup::from_cayley_table(&table, 0), g);
        }
    }

    #[test]
    fn davenport_small_groups() {
        assert_eq!(davenport(&AbelianGroup::trivial()).unwrap().value, 1);
        assert_eq!(davenport(&AbelianGroup::cyclic(2)).unwrap().value, 2);
        let z33 = AbelianGroup::new(vec![3, 3]).unwrap();
        let cert = davenport(&z33).unwrap();
        assert_eq!(cert.value, 5);
        assert_eq!(cert.witness.len(), 4);
    }

    #[test]
    fn davenport_cap() {
        assert!(matches!(
            davenport(&AbelianGroup::cyclic(65)),
            Err(MonoidError::CapExceeded { order: 65, cap: 64 })
        ));
        let z9 = AbelianGroup::cyclic(9);
        assert!(davenport_with_cap(&z9, 8).is_err());
        assert_eq!(davenport_with_cap(&z9, 9).unwrap().value, 9);
    }
}
