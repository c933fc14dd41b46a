//! Class groups as finite Cayley tables over reduced forms.

use std::collections::{BTreeSet, HashMap};

use serde::Serialize;

use super::indefinite::{cycle, reduce_indefinite, reduced_indefinite_forms};
use super::{check_discriminant, compose_unreduced, BQForm, ClassError};
use crate::arith::isqrt;
use crate::monoid::AbelianGroup;

/// Largest class count for which a full composition table is built.
const MAX_CLASSES: usize = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ClassGroupKind {
    /// Positive definite forms, negative discriminant.
    Definite,
    /// Proper equivalence of indefinite forms; classes are rho-cycles.
    Narrow,
    /// Narrow classes modulo the class of the negated principal form.
    Wide,
}

/// A class group with one representative form per class; class `0` is principal.
#[derive(Clone, Debug, Serialize)]
pub struct ClassGroupData {
    pub discriminant: i64,
    pub kind: ClassGroupKind,
    pub classes: Vec<BQForm>,
    pub structure: AbelianGroup,
    pub composition_table: Vec<Vec<usize>>,
    /// Every reduced form of the discriminant, mapped to its class.
    #[serde(skip)]
    lookup: HashMap<BQForm, usize>,
}

impl ClassGroupData {
    pub fn class_number(&self) -> usize {
        self.classes.len()
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn compose(&self, x: usize, y: usize) -> usize {
        self.composition_table[x][y]
    }

    pub fn inverse(&self, x: usize) -> usize {
        (0..self.classes.len()).find(|&y| self.compose(x, y) == 0).expect("group table has inverses")
    }

    pub fn power(&self, x: usize, k: u64) -> usize {
        (0..k).fold(0, |acc, _| self.compose(acc, x))
    }

    pub fn element_order(&self, x: usize) -> u64 {
        let mut acc = x;
        let mut k = 1;
        while acc != 0 {
            acc = self.compose(acc, x);
            k += 1;
        }
        k
    }

    /// Class of an arbitrary primitive form of this discriminant.
    pub fn class_of(&self, f: &BQForm) -> Result<usize, ClassError> {
        let disc = f.discriminant();
        if disc != self.discriminant {
            return Err(ClassError::Mismatch(self.discriminant, disc));
        }
        let reduced = f.reduce()?;
        self.lookup.get(&reduced).copied().ok_or(ClassError::NotPrimitive(*f))
    }

    pub fn is_principal(&self, f: &BQForm) -> Result<bool, ClassError> {
        Ok(self.class_of(f)? == 0)
    }

    /// The subgroup generated by `gens`.
    pub fn subgroup_generated(&self, gens: &[usize]) -> BTreeSet<usize> {
        let mut out = BTreeSet::from([0]);
        let mut frontier = vec![0];
        while let Some(x) = frontier.pop() {
            for &g in gens {
                let y = self.compose(x, g);
                if out.insert(y) {
                    frontier.push(y);
                }
            }
        }
        out
    }

    fn from_classes(
        discriminant: i64,
        kind: ClassGroupKind,
        classes: Vec<BQForm>,
        composition_table: Vec<Vec<usize>>,
        lookup: HashMap<BQForm, usize>,
    ) -> Self {
        let structure = AbelianGroup::from_cayley_table(&composition_table, 0);
        ClassGroupData { discriminant, kind, classes, structure, composition_table, lookup }
    }
}

impl BQForm {
    /// Principal in the definite or wide sense.
    pub fn is_principal(&self) -> Result<bool, ClassError> {
        let disc = self.discriminant();
        check_discriminant(disc)?;
        if disc < 0 {
            Ok(self.reduce()? == BQForm::principal(disc)?)
        } else {
            class_group_real(disc)?.is_principal(self)
        }
    }
}

/// Primitive reduced positive definite forms of discriminant `disc < 0`, sorted.
pub fn reduced_forms(disc: i64) -> Result<Vec<BQForm>, ClassError> {
    check_discriminant(disc)?;
    if disc >= 0 {
        return Err(ClassError::BadDiscriminant(disc));
    }
    let a_max = isqrt((-disc / 3) as i128) as i64;
    let mut out = Vec::new();
    for a in 1..=a_max {
        for b in -a..=a {
            let num = b * b - disc;
            if num % (4 * a) != 0 {
                continue;
            }
            let f = BQForm::new(a, b, num / (4 * a));
            if f.is_reduced() && f.is_primitive() {
                out.push(f);
            }
        }
    }
    out.sort();
    Ok(out)
}

/// Definite class group for `disc < 0`, wide class group for `disc > 0`.
pub fn class_group(disc: i64) -> Result<ClassGroupData, ClassError> {
    if disc < 0 {
        definite_class_group(disc)
    } else {
        class_group_real(disc)
    }
}

pub fn class_number(disc: i64) -> Result<usize, ClassError> {
    Ok(class_group(disc)?.class_number())
}

pub fn class_group_structure(disc: i64) -> Result<AbelianGroup, ClassError> {
    Ok(class_group(disc)?.structure)
}

fn definite_class_group(disc: i64) -> Result<ClassGroupData, ClassError> {
    let mut forms = reduced_forms(disc)?;
    if forms.len() > MAX_CLASSES {
        return Err(ClassError::TooLarge(forms.len()));
    }
    // the principal form is the least reduced form, so it already sits first
    debug_assert_eq!(forms[0], BQForm::principal(disc)?);
    forms.sort();
    let lookup: HashMap<BQForm, usize> = forms.iter().enumerate().map(|(i, f)| (*f, i)).collect();
    let table = forms
        .iter()
        .map(|f| forms.iter().map(|g| lookup[&f.compose(g).expect("same discriminant")]).collect())
        .collect();
    Ok(ClassGroupData::from_classes(disc, ClassGroupKind::Definite, forms, table, lookup))
}

fn check_indefinite(disc: i64) -> Result<(), ClassError> {
    check_discriminant(disc)?;
    if disc <= 0 {
        return Err(ClassError::BadDiscriminant(disc));
    }
    Ok(())
}

/// Narrow class group of an indefinite discriminant; each class is a rho-cycle.
pub fn narrow_class_group(disc: i64) -> Result<ClassGroupData, ClassError> {
    check_indefinite(disc)?;
    let principal_cycle = reduce_indefinite(BQForm::principal(disc)?);
    let mut cycles: Vec<Vec<BQForm>> = Vec::new();
    let mut seen: HashMap<BQForm, usize> = HashMap::new();
    for f in std::iter::once(principal_cycle).chain(reduced_indefinite_forms(disc)) {
        if seen.contains_key(&f) {
            continue;
        }
        let members = cycle(&f);
        for g in &members {
            seen.insert(*g, cycles.len());
        }
        cycles.push(members);
    }
    if cycles.len() > MAX_CLASSES {
        return Err(ClassError::TooLarge(cycles.len()));
    }
    // principal cycle first, the rest ordered by representative
    let rep = |c: &Vec<BQForm>| *c.iter().filter(|f| f.a > 0).min().expect("cycles alternate the sign of a");
    let mut order: Vec<usize> = (1..cycles.len()).collect();
    order.sort_by_key(|&i| rep(&cycles[i]));
    order.insert(0, 0);
    let mut renumber = vec![0; cycles.len()];
    for (new, &old) in order.iter().enumerate() {
        renumber[old] = new;
    }
    let lookup: HashMap<BQForm, usize> = seen.into_iter().map(|(f, i)| (f, renumber[i])).collect();
    let mut classes: Vec<BQForm> = order.iter().map(|&i| rep(&cycles[i])).collect();
    if let Some(one) = classes.first_mut() {
        if lookup.get(&BQForm::principal(disc)?) == Some(&0) {
            *one = BQForm::principal(disc)?;
        }
    }
    let table = classes
        .iter()
        .map(|f| {
            classes
                .iter()
                .map(|g| lookup[&reduce_indefinite(compose_unreduced(f, g))])
                .collect()
        })
        .collect();
    Ok(ClassGroupData::from_classes(disc, ClassGroupKind::Narrow, classes, table, lookup))
}

/// Wide class group of an indefinite discriminant.
pub fn class_group_real(disc: i64) -> Result<ClassGroupData, ClassError> {
    let narrow = narrow_class_group(disc)?;
    let twist = narrow.class_of(&BQForm::principal(disc)?.negated())?;
    // cosets of {0, twist}, numbered in order of their least narrow class
    let mut coset_of = vec![usize::MAX; narrow.class_number()];
    let mut reps = Vec::new();
    for x in 0..narrow.class_number() {
        if coset_of[x] == usize::MAX {
            let y = narrow.compose(x, twist);
            coset_of[x] = reps.len();
            coset_of[y] = reps.len();
            reps.push(x);
        }
    }
    let classes = reps.iter().map(|&x| narrow.classes[x]).collect();
    let table = reps
        .iter()
        .map(|&x| reps.iter().map(|&y| coset_of[narrow.compose(x, y)]).collect())
        .collect();
    let lookup = narrow.lookup.iter().map(|(f, &i)| (*f, coset_of[i])).collect();
    Ok(ClassGroupData::from_classes(disc, ClassGroupKind::Wide, classes, table, lookup))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn forms(list: &[(i64, i64, i64)]) -> Vec<BQForm> {
        list.iter().map(|&(a, b, c)| BQForm::new(a, b, c)).collect()
    }

    #[test]
    fn reduced_form_examples() {
        assert_eq!(reduced_forms(-4).unwrap(), forms(&[(1, 0, 1)]));
        assert_eq!(reduced_forms(-20).unwrap(), forms(&[(1, 0, 5), (2, 2, 3)]));
        assert_eq!(
            reduced_forms(-164).unwrap(),
            forms(&[(1, 0, 41), (2, 2, 21), (3, -2, 14), (3, 2, 14), (5, -4, 9), (5, 4, 9), (6, -2, 7), (6, 2, 7)])
        );
        assert!(reduced_forms(-5).is_err());
        assert!(reduced_forms(8).is_err());
    }

    #[test]
    fn definite_structures() {
        assert!(class_group_structure(-4).unwrap().is_trivial());
        assert_eq!(class_group_structure(-20).unwrap(), AbelianGroup::cyclic(2));
        assert_eq!(class_group_structure(-56).unwrap(), AbelianGroup::cyclic(4));
        assert_eq!(class_group_structure(-164).unwrap(), AbelianGroup::cyclic(8));
        // Q(sqrt -5 * 3 * 7) has 2-rank 2
        assert_eq!(class_group_structure(-420).unwrap(), AbelianGroup::new(vec![2, 2, 2]).unwrap());
    }

    #[test]
    fn non_fundamental_discriminants() {
        // Z[2i], Z[sqrt -3 * ...] orders
        assert_eq!(class_number(-16).unwrap(), 1);
        assert_eq!(class_number(-12).unwrap(), 1);
        assert_eq!(class_number(-36).unwrap(), 2);
        assert!(reduced_forms(-16).unwrap().iter().all(BQForm::is_primitive));
    }

    #[test]
    fn real_class_groups() {
        let cg = class_group_real(136).unwrap();
        assert_eq!(cg.structure, AbelianGroup::cyclic(2));
        assert_eq!(cg.kind, ClassGroupKind::Wide);
        assert!(class_group_real(8).unwrap().structure.is_trivial());
        assert_eq!(class_group_real(40).unwrap().structure, AbelianGroup::cyclic(2));
        assert_eq!(narrow_class_group(136).unwrap().structure, AbelianGroup::cyclic(4));
        // norm -1 unit: narrow and wide agree
        assert_eq!(narrow_class_group(8).unwrap().class_number(), 1);
        assert!(class_group_real(-4).is_err());
    }

    #[test]
    fn negated_form_is_wide_equivalent() {
        for disc in [8i64, 12, 40, 136, 145, 229, 316] {
            let cg = class_group_real(disc).unwrap();
            for f in &cg.classes {
                assert_eq!(cg.class_of(f).unwrap(), cg.class_of(&f.negated()).unwrap(), "D={disc} {f}");
            }
        }
    }

    #[test]
    fn principality() {
        assert!(BQForm::principal(-20).unwrap().is_principal().unwrap());
        assert!(!BQForm::new(2, 2, 3).is_principal().unwrap());
        assert!(BQForm::new(1, 0, -34).is_principal().unwrap());
        assert!(BQForm::new(-1, 0, 34).is_principal().unwrap());
        assert!(!BQForm::new(3, 2, -11).is_principal().unwrap());
    }

    #[test]
    fn tables_are_groups() {
        for disc in [-3i64, -4, -20, -23, -56, -84, -164, -420, -16, -36, 8, 40, 136, 229] {
            let cg = class_group(disc).unwrap();
            let h = cg.class_number();
            assert_eq!(h as u64, cg.structure.order());
            for x in 0..h {
                assert_eq!(cg.compose(0, x), x);
                assert_eq!(cg.compose(x, cg.inverse(x)), 0);
                for y in 0..h {
                    assert_eq!(cg.compose(x, y), cg.compose(y, x));
                    for z in 0..h {
                        assert_eq!(cg.compose(cg.compose(x, y), z), cg.compose(x, cg.compose(y, z)));
                    }
                }
            }
        }
    }
}
