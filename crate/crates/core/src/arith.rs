//! Small exact integer helpers shared by the quadratic and form code.
//!
//! Everything here works on `i128`/`u64` and is meant for desk-scale inputs
//! (trial division, no sieving).

use num_integer::{Integer, Roots};

/// Floor of the square root of a non-negative integer.
pub fn isqrt(n: i128) -> i128 {
    assert!(n >= 0, "isqrt of negative value {n}");
    n.sqrt()
}

/// `Some(r)` with `r*r == n` when `n` is a perfect square.
pub fn exact_sqrt(n: i128) -> Option<i128> {
    if n < 0 {
        return None;
    }
    let r = isqrt(n);
    (r * r == n).then_some(r)
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) {
        return false;
    }
    let mut p = 3;
    while p * p <= n {
        if n.is_multiple_of(p) {
            return false;
        }
        p += 2;
    }
    true
}

/// Prime factorization of `n >= 1` as `(prime, exponent)` pairs, ascending.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// All positive divisors of `n >= 1`, ascending.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut divs = vec![1u64];
    for (p, e) in factorize(n) {
        let len = divs.len();
        let mut pk = 1;
        for _ in 0..e {
            pk *= p;
            for i in 0..len {
                divs.push(divs[i] * pk);
            }
        }
    }
    divs.sort_unstable();
    divs
}

pub fn is_squarefree(n: i64) -> bool {
    n != 0 && factorize(n.unsigned_abs()).iter().all(|&(_, e)| e == 1)
}

/// Kronecker symbol `(a / p)` for a prime `p`.
pub fn kronecker_prime(a: i64, p: u64) -> i32 {
    if p == 2 {
        if a % 2 == 0 {
            return 0;
        }
        return match a.rem_euclid(8) {
            1 | 7 => 1,
            _ => -1,
        };
    }
    let p = p as i128;
    let r = (a as i128).rem_euclid(p);
    if r == 0 {
        return 0;
    }
    if pow_mod(r, (p - 1) / 2, p) == 1 {
        1
    } else {
        -1
    }
}

pub fn pow_mod(mut base: i128, mut exp: i128, m: i128) -> i128 {
    let mut acc = 1 % m;
    base = base.rem_euclid(m);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    acc
}

/// Extended gcd returning `(g, x, y)` with `a*x + b*y = g >= 0`.
pub fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    let e = a.extended_gcd(&b);
    if e.gcd < 0 {
        (-e.gcd, -e.x, -e.y)
    } else {
        (e.gcd, e.x, e.y)
    }
}

pub fn gcd(a: i128, b: i128) -> i128 {
    a.gcd(&b)
}

/// Primes `p <= bound`, ascending.
pub fn primes_up_to(bound: u64) -> Vec<u64> {
    (2..=bound).filter(|&p| is_prime(p)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorize_and_divisors() {
        assert_eq!(factorize(2025), vec![(3, 4), (5, 2)]);
        assert_eq!(factorize(1), vec![]);
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(1), vec![1]);
    }

    #[test]
    fn squarefree() {
        assert!(is_squarefree(-1));
        assert!(is_squarefree(34));
        assert!(!is_squarefree(-12));
        assert!(!is_squarefree(0));
    }

    #[test]
    fn kronecker_values() {
        // -4 is a residue mod 5, -40 is not mod 3
        assert_eq!(kronecker_prime(-4, 5), 1);
        assert_eq!(kronecker_prime(-40, 3), -1);
        assert_eq!(kronecker_prime(-4, 2), 0);
        assert_eq!(kronecker_prime(-47, 2), 1);
        assert_eq!(kronecker_prime(-3, 2), -1);
    }

    #[test]
    fn ext_gcd_identity() {
        for (a, b) in [(240, 46), (-7, 3), (0, 5), (12, -18)] {
            let (g, x, y) = ext_gcd(a, b);
            assert_eq!(a * x + b * y, g);
            assert_eq!(g, gcd(a, b));
        }
    }

    #[test]
    fn sqrt_helpers() {
        assert_eq!(exact_sqrt(4900), Some(70));
        assert_eq!(exact_sqrt(4901), None);
        assert_eq!(exact_sqrt(-4), None);
        assert_eq!(isqrt(99), 9);
    }
}
