//! Reduced indefinite forms and their cycles.

use super::BQForm;
use crate::arith::isqrt;

fn root_floor(disc: i64) -> i64 {
    isqrt(disc as i128) as i64
}

/// `0 < b < sqrt D` and `sqrt D - b < 2|a| < sqrt D + b`.
pub(super) fn is_reduced_indefinite(f: &BQForm) -> bool {
    let disc = f.discriminant() as i128;
    let (a2, b) = (2 * f.a.unsigned_abs() as i128, f.b as i128);
    if f.a == 0 || b <= 0 || b * b >= disc {
        return false;
    }
    let lower = (a2 + b) * (a2 + b) > disc;
    let upper = a2 <= b || (a2 - b) * (a2 - b) < disc;
    lower && upper
}

/// `b' = -b mod 2|c|` placed in the window that keeps the image reduced, or
/// in `(-|c|, |c|]` while `|c|` is still large.
fn next_b(b: i64, c: i64, disc: i64) -> i64 {
    let m = 2 * c.abs();
    let root = root_floor(disc);
    if c.abs() as i128 * c.abs() as i128 > disc as i128 {
        let mut nb = (-b).rem_euclid(m);
        if nb > c.abs() {
            nb -= m;
        }
        nb
    } else {
        root - (root + b).rem_euclid(m)
    }
}

/// One step of `rho`: `(a, b, c) -> (c, b', (b'^2 - D)/4c)`, a proper equivalence.
pub(super) fn rho(f: &BQForm) -> BQForm {
    let disc = f.discriminant();
    let nb = next_b(f.b, f.c, disc);
    BQForm::new(f.c, nb, (nb * nb - disc) / (4 * f.c))
}

pub(super) fn reduce_indefinite(f: BQForm) -> BQForm {
    let mut g = f;
    // the first step may leave c = 0 only for square discriminants, which are rejected earlier
    if g.a == 0 || !is_reduced_indefinite(&g) {
        if g.c == 0 {
            // swap a and c through (x, y) -> (-y, x)
            g = BQForm::new(g.c, -g.b, g.a);
        }
        while !is_reduced_indefinite(&g) {
            g = rho(&g);
        }
    }
    g
}

/// The rho-cycle of a reduced form, starting with the form itself.
pub(super) fn cycle(f: &BQForm) -> Vec<BQForm> {
    let mut out = vec![*f];
    let mut g = rho(f);
    while g != *f {
        out.push(g);
        g = rho(&g);
    }
    out
}

/// Every primitive reduced form of discriminant `disc > 0`.
pub(super) fn reduced_indefinite_forms(disc: i64) -> Vec<BQForm> {
    let root = root_floor(disc);
    let mut out = Vec::new();
    for b in 1..=root {
        if (b - disc).rem_euclid(2) != 0 {
            continue;
        }
        let num = b * b - disc;
        for a_abs in 1..=(root + b) / 2 + 1 {
            for a in [a_abs, -a_abs] {
                if num % (4 * a) != 0 {
                    continue;
                }
                let f = BQForm::new(a, b, num / (4 * a));
                if f.is_primitive() && is_reduced_indefinite(&f) {
                    out.push(f);
                }
            }
        }
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rho_keeps_reduced_forms_reduced() {
        for disc in [5i64, 8, 12, 13, 40, 60, 136, 145, 229] {
            for f in reduced_indefinite_forms(disc) {
                let g = rho(&f);
                assert!(is_reduced_indefinite(&g), "{f} -> {g}");
                assert_eq!(g.discriminant(), disc);
            }
        }
    }

    #[test]
    fn cycles_partition_reduced_forms() {
        for disc in [8i64, 40, 136, 229] {
            let forms = reduced_indefinite_forms(disc);
            let mut seen = std::collections::BTreeSet::new();
            for f in &forms {
                if seen.contains(f) {
                    continue;
                }
                for g in cycle(f) {
                    assert!(seen.insert(g));
                }
            }
            assert_eq!(seen.len(), forms.len());
        }
    }

    #[test]
    fn reduction_reaches_a_reduced_form() {
        for (a, b, c) in [(1, 0, -34), (3, 10, -3), (-5, 2, 6), (17, 40, 22), (9, 17, 5), (2, 1, -40)] {
            let f = BQForm::new(a, b, c);
            let g = reduce_indefinite(f);
            assert!(is_reduced_indefinite(&g), "{f} -> {g}");
            assert_eq!(g.discriminant(), f.discriminant());
        }
    }
}
