//! Brute-force oracles shared by the integration tests. Nothing here calls
//! into the library.

#![allow(dead_code)]

use std::collections::BTreeSet;

/// Norm form of the maximal order of `Q(sqrt d)` at `a + b w`.
pub fn norm_form(d: i64, a: i64, b: i64) -> i64 {
    if d.rem_euclid(4) == 1 {
        a * a + a * b + (1 - d) / 4 * b * b
    } else {
        a * a - d * b * b
    }
}

/// Positive norms up to `bound` of the maximal order, `d < 0`.
pub fn imaginary_norms(d: i64, bound: i64) -> BTreeSet<i64> {
    let mut out = BTreeSet::new();
    let reach = 2 * ((bound as f64).sqrt() as i64) + 2;
    for a in -reach..=reach {
        for b in -reach..=reach {
            let n = norm_form(d, a, b);
            if n >= 1 && n <= bound {
                out.insert(n);
            }
        }
    }
    out
}

/// Atoms of the multiplicative monoid `set` (which contains 1).
pub fn atoms(set: &BTreeSet<i64>) -> BTreeSet<i64> {
    set.iter()
        .copied()
        .filter(|&m| m > 1 && !set.iter().any(|&x| x > 1 && x < m && m % x == 0 && set.contains(&(m / x))))
        .collect()
}

/// Every multiset of atoms of `set` multiplying to `m`, each sorted ascending.
pub fn factorizations(set: &BTreeSet<i64>, m: i64) -> BTreeSet<Vec<i64>> {
    let atoms: Vec<i64> = atoms(set).into_iter().filter(|&a| a <= m).collect();
    let mut out = BTreeSet::new();
    fn go(atoms: &[i64], start: usize, rest: i64, acc: &mut Vec<i64>, out: &mut BTreeSet<Vec<i64>>) {
        if rest == 1 {
            out.insert(acc.clone());
            return;
        }
        for i in start..atoms.len() {
            if rest % atoms[i] == 0 {
                acc.push(atoms[i]);
                go(atoms, i, rest / atoms[i], acc, out);
                acc.pop();
            }
        }
    }
    go(&atoms, 0, m, &mut Vec::new(), &mut out);
    out
}

/// Whether some nonempty sub-multiset of `seq` sums to zero in `Z_{n1} x ... x Z_{nk}`.
pub fn has_zero_sum(factors: &[u64], seq: &[Vec<u64>]) -> bool {
    (1u32..(1 << seq.len())).any(|mask| {
        (0..factors.len()).all(|c| {
            let s: u64 = (0..seq.len()).filter(|i| mask >> i & 1 == 1).map(|i| seq[i][c]).sum();
            s.is_multiple_of(factors[c])
        })
    })
}

/// Davenport constant by exhaustive search over multisets.
pub fn davenport_brute(factors: &[u64]) -> usize {
    let elems: Vec<Vec<u64>> = (0..factors.iter().product::<u64>())
        .map(|mut i| {
            factors
                .iter()
                .map(|&f| {
                    let c = i % f;
                    i /= f;
                    c
                })
                .collect()
        })
        .filter(|e: &Vec<u64>| e.iter().any(|&c| c != 0))
        .collect();
    // longest zero-sum-free multiset, built with nondecreasing indices
    fn longest(factors: &[u64], elems: &[Vec<u64>], start: usize, seq: &mut Vec<Vec<u64>>) -> usize {
        let mut best = seq.len();
        for i in start..elems.len() {
            seq.push(elems[i].clone());
            if !has_zero_sum(factors, seq) {
                best = best.max(longest(factors, elems, i, seq));
            }
            seq.pop();
        }
        best
    }
    longest(factors, &elems, 0, &mut Vec::new()) + 1
}

/// Least element of the normset up to `bound` with two distinct factorizations.
pub fn first_non_unique(d: i64, bound: i64) -> Option<i64> {
    let set = imaginary_norms(d, bound);
    set.iter().copied().filter(|&m| m > 1).find(|&m| factorizations(&set, m).len() > 1)
}
