//! Exhaustive enumeration of lineal and cyclic shells up to isomorphism.
//!
//! Lineal shells grow one facet at a time. Dropping the last facet of a
//! lineal shell leaves a lineal shell, and the lineal order of a shell is
//! unique up to reversal, so extending one representative per class at both
//! ends reaches every class. A new facet keeps n vertices of the end facet
//! and adds one vertex, fresh or already present; the pattern check filters.
//!
//! Cyclic shells are closures of lineal ones. For four or more facets the
//! closing facet must contain the n−1 vertices shared by the two end facets,
//! one vertex private to each end, and nothing else, which leaves at most
//! four candidates. With three facets the two ends are adjacent and the
//! closing facet is searched like an ordinary extension.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::canon::{canonize, CanonicalForm};
use crate::catalog;
use crate::complex::{Simplex, SimplicialComplex};
use crate::error::{Error, Result};
use crate::shells::{family_name, pattern_entry, wheel_core, ShellKind};

/// Largest facet count the enumerator accepts.
pub const DEFAULT_MAX_FACETS: usize = 12;

type Mask = u64;

/// One isomorphism class, stored with canonical labels and a witness order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShellClass {
    pub canonical: CanonicalForm,
    order: Vec<Mask>,
}

impl ShellClass {
    pub fn facet_count(&self) -> usize {
        self.order.len()
    }

    pub fn complex(&self) -> SimplicialComplex {
        self.canonical.to_complex()
    }

    /// Facets in the order realising the shell pattern.
    pub fn witness_order(&self) -> Vec<Simplex> {
        let c = self.complex();
        self.order
            .iter()
            .map(|&m| {
                let labels: Vec<String> = bits(m).map(|b| b.to_string()).collect();
                let s = Simplex::from_labels(&labels).expect("nonempty facet");
                debug_assert!(c.has_facet(&s));
                s
            })
            .collect()
    }
}

/// Classes per facet count, each list sorted by canonical form.
pub type Levels = BTreeMap<usize, Vec<ShellClass>>;

fn bits(m: Mask) -> impl Iterator<Item = usize> {
    (0..64).filter(move |b| m & (1 << b) != 0)
}

fn check_params(n: usize, kind: ShellKind, k_max: usize) -> Result<()> {
    if !(2..=3).contains(&n) {
        return Err(Error::BadParameter(format!("shell dimension must be 2 or 3, got {n}")));
    }
    if k_max < kind.min_facets() || k_max > DEFAULT_MAX_FACETS {
        return Err(Error::BadParameter(format!(
            "{kind} facet bound must lie in {}..={DEFAULT_MAX_FACETS}, got {k_max}",
            kind.min_facets()
        )));
    }
    Ok(())
}

fn fits(order: &[Mask], f: Mask, n: usize, kind: ShellKind) -> bool {
    let k = order.len() + 1;
    order
        .iter()
        .enumerate()
        .all(|(i, &h)| (h & f).count_ones() as usize == pattern_entry(kind, n, k, i, k - 1))
}

/// Canonical form and the order relabelled into canonical labels.
fn canonical_class(order: &[Mask]) -> ShellClass {
    let used: Mask = order.iter().fold(0, |a, &f| a | f);
    let index: BTreeMap<usize, usize> = bits(used).enumerate().map(|(i, b)| (b, i)).collect();
    let facets: Vec<Vec<usize>> = order.iter().map(|&f| bits(f).map(|b| index[&b]).collect()).collect();
    let (canonical, labeling) = canonize(index.len(), &facets);
    let order = facets
        .iter()
        .map(|f| f.iter().fold(0, |m, &v| m | (1 << labeling[v])))
        .collect();
    ShellClass { canonical, order }
}

/// Candidate facets sharing `n` vertices with `last`.
fn extensions(order: &[Mask], n: usize) -> Vec<Mask> {
    let last = *order.last().unwrap();
    let used: Mask = order.iter().fold(0, |a, &f| a | f);
    let fresh = 1 << (64 - used.leading_zeros());
    let others: Vec<Mask> = bits(used & !last).map(|b| 1 << b).chain([fresh]).collect();
    let mut out = Vec::new();
    for drop in bits(last) {
        let kept = last & !(1 << drop);
        debug_assert_eq!(kept.count_ones() as usize, n);
        for &extra in &others {
            out.push(kept | extra);
        }
    }
    out
}

fn seed(n: usize) -> ShellClass {
    // nLW_2: two facets sharing n vertices.
    let core: Mask = (1 << n) - 1;
    canonical_class(&[core | 1 << n, core | 1 << (n + 1)])
}

fn insert(level: &mut BTreeMap<CanonicalForm, ShellClass>, class: ShellClass) {
    level.entry(class.canonical.clone()).or_insert(class);
}

/// All n-lineal shells with 2..=k_max facets, up to isomorphism.
pub fn enumerate_lineal_shells(n: usize, k_max: usize) -> Result<Levels> {
    check_params(n, ShellKind::Lineal, k_max)?;
    Ok(lineal_levels(n, k_max))
}

fn lineal_levels(n: usize, k_max: usize) -> Levels {
    let mut levels = Levels::new();
    levels.insert(2, vec![seed(n)]);
    for k in 3..=k_max {
        let mut next = BTreeMap::new();
        for class in &levels[&(k - 1)] {
            let reversed: Vec<Mask> = class.order.iter().rev().copied().collect();
            for order in [&class.order, &reversed] {
                for f in extensions(order, n) {
                    if fits(order, f, n, ShellKind::Lineal) {
                        let mut grown = order.clone();
                        grown.push(f);
                        insert(&mut next, canonical_class(&grown));
                    }
                }
            }
        }
        levels.insert(k, next.into_values().collect());
    }
    levels
}

/// All n-cyclic shells with 3..=k_max facets, up to isomorphism.
pub fn enumerate_cyclic_shells(n: usize, k_max: usize) -> Result<Levels> {
    check_params(n, ShellKind::Cyclic, k_max)?;
    let lineal = lineal_levels(n, k_max - 1);
    let mut levels = Levels::new();
    for k in 3..=k_max {
        let mut closed = BTreeMap::new();
        for class in &lineal[&(k - 1)] {
            let order = &class.order;
            let candidates = if k == 3 {
                extensions(order, n)
            } else {
                closing_candidates(order)
            };
            for f in candidates {
                if fits(order, f, n, ShellKind::Cyclic) {
                    let mut grown = order.clone();
                    grown.push(f);
                    insert(&mut closed, canonical_class(&grown));
                }
            }
        }
        levels.insert(k, closed.into_values().collect());
    }
    Ok(levels)
}

fn closing_candidates(order: &[Mask]) -> Vec<Mask> {
    let first = order[0];
    let last = *order.last().unwrap();
    let shared = first & last;
    let mut out = Vec::new();
    for x in bits(first & !last) {
        for y in bits(last & !first) {
            out.push(shared | 1 << x | 1 << y);
        }
    }
    out
}

/// Name for an enumerated class: its wheel family, else its catalogue entry.
pub fn class_name(n: usize, kind: ShellKind, class: &ShellClass) -> Option<String> {
    if class.facet_count() == 2 || wheel_core(&class.witness_order()).is_some() {
        return Some(family_name(n, kind, class.facet_count()));
    }
    catalog::name_of(n, kind, &class.canonical).map(str::to_owned)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NamedClass {
    pub name: Option<String>,
    pub canonical: CanonicalForm,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LevelSummary {
    pub k: usize,
    pub count: usize,
    pub classes: Vec<NamedClass>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UnnamedClass {
    pub k: usize,
    pub canonical: CanonicalForm,
}

/// Enumerated classes matched against the wheel families and the catalogue.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassificationReport {
    pub n: usize,
    pub kind: ShellKind,
    pub k_max: usize,
    pub levels: Vec<LevelSummary>,
    /// Enumerated classes with no name.
    pub unnamed: Vec<UnnamedClass>,
    /// Catalogue entries and family members within range that were not enumerated.
    pub missing: Vec<String>,
    pub ok: bool,
}

impl ClassificationReport {
    /// Names found outside the wheel families.
    pub fn exceptional_names(&self) -> BTreeSet<String> {
        let family = format!("{}{}W_", self.n, self.kind.letter());
        self.levels
            .iter()
            .flat_map(|l| l.classes.iter().filter_map(|c| c.name.clone()))
            .filter(|name| !name.starts_with(&family))
            .collect()
    }

    pub fn counts(&self) -> BTreeMap<usize, usize> {
        self.levels.iter().map(|l| (l.k, l.count)).collect()
    }
}

/// Enumerates and names every class; `ok` iff nothing is unnamed or missing.
pub fn verify_classification(n: usize, kind: ShellKind, k_max: usize) -> Result<ClassificationReport> {
    let levels = match kind {
        ShellKind::Lineal => enumerate_lineal_shells(n, k_max)?,
        ShellKind::Cyclic => enumerate_cyclic_shells(n, k_max)?,
    };
    let mut summaries = Vec::new();
    let mut unnamed = Vec::new();
    let mut found = BTreeSet::new();
    for (&k, classes) in &levels {
        let named: Vec<NamedClass> = classes
            .iter()
            .map(|c| NamedClass {
                name: class_name(n, kind, c),
                canonical: c.canonical.clone(),
            })
            .collect();
        for c in &named {
            match &c.name {
                Some(name) => {
                    found.insert(name.clone());
                }
                None => unnamed.push(UnnamedClass {
                    k,
                    canonical: c.canonical.clone(),
                }),
            }
        }
        summaries.push(LevelSummary {
            k,
            count: named.len(),
            classes: named,
        });
    }
    let expected = catalog::entries()
        .iter()
        .filter(|e| e.dim == n && e.kind == kind && e.facet_count() <= k_max)
        .map(|e| e.name.to_owned())
        .chain((kind.min_facets()..=k_max).map(|k| family_name(n, kind, k)));
    let missing: Vec<String> = expected.filter(|name| !found.contains(name)).collect();
    Ok(ClassificationReport {
        n,
        kind,
        k_max,
        ok: unnamed.is_empty() && missing.is_empty(),
        levels: summaries,
        unnamed,
        missing,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::are_isomorphic;
    use crate::intersection::intersection_matrix;
    use crate::shells::detect_shell;

    #[test]
    fn parameter_bounds() {
        assert!(enumerate_lineal_shells(4, 5).is_err());
        assert!(enumerate_lineal_shells(3, 1).is_err());
        assert!(enumerate_lineal_shells(3, 13).is_err());
        assert!(enumerate_cyclic_shells(3, 2).is_err());
    }

    #[test]
    fn small_lineal_levels_are_wheels() {
        let levels = enumerate_lineal_shells(3, 3).unwrap();
        assert_eq!(levels[&2].len(), 1);
        assert_eq!(levels[&3].len(), 1);
        let c = levels[&3][0].complex();
        assert_eq!(detect_shell(&c).unwrap().unwrap().catalog_id.as_deref(), Some("3LW_3"));
    }

    #[test]
    fn witness_orders_follow_the_pattern() {
        for (kind, levels) in [
            (ShellKind::Lineal, enumerate_lineal_shells(3, 9).unwrap()),
            (ShellKind::Cyclic, enumerate_cyclic_shells(3, 9).unwrap()),
        ] {
            for (&k, classes) in &levels {
                for class in classes {
                    let c = class.complex();
                    let m = intersection_matrix(&c, Some(&class.witness_order())).unwrap();
                    for i in 0..k {
                        for j in 0..k {
                            assert_eq!(m.entries[i][j], pattern_entry(kind, 3, k, i, j));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn truncated_lineal_shells_stay_lineal() {
        let levels = enumerate_lineal_shells(3, 9).unwrap();
        for classes in levels.values().skip(1) {
            for class in classes {
                let order = class.witness_order();
                let shorter = SimplicialComplex::from_simplices(order[..order.len() - 1].to_vec()).unwrap();
                let w = detect_shell(&shorter).unwrap().expect("still a shell");
                assert_eq!((w.kind, w.facet_count()), (ShellKind::Lineal, order.len() - 1));
            }
        }
    }

    #[test]
    fn classes_within_a_level_are_pairwise_non_isomorphic() {
        let levels = enumerate_cyclic_shells(3, 8).unwrap();
        for classes in levels.values() {
            for i in 0..classes.len() {
                for j in (i + 1)..classes.len() {
                    let (a, b) = (classes[i].complex(), classes[j].complex());
                    assert!(are_isomorphic(&a, &b).unwrap().is_none());
                }
            }
        }
    }

    #[test]
    fn three_facet_cyclic_classes() {
        // Besides the wheel, three facets around a common (n−1)-face close up.
        for n in [2, 3] {
            let report = verify_classification(n, ShellKind::Cyclic, 3).unwrap();
            assert_eq!(report.counts()[&3], 2);
            assert_eq!(report.unnamed.len(), 1);
            let book = report.unnamed[0].canonical.to_complex();
            let common = book
                .vertices()
                .iter()
                .filter(|v| book.facets().iter().all(|f| f.contains(v)))
                .count();
            assert_eq!(common, n);
        }
    }

    #[test]
    fn two_dimensional_lineal_classification_is_complete() {
        let report = verify_classification(2, ShellKind::Lineal, 8).unwrap();
        assert!(report.ok, "{report:?}");
        let names: Vec<&str> = ["LE_4", "LE_5", "LE_6"].to_vec();
        assert_eq!(
            report.exceptional_names(),
            names.into_iter().map(String::from).collect()
        );
    }
}
