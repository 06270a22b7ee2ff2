//! Finite magmas and groups on the label set `1..=n`.
//!
//! A [`Magma`] is a bare multiplication table; [`FiniteGroup`] wraps one that
//! has passed the full group axioms and caches identity and inverses.  The
//! structural helpers here (cyclic subgroups, left cosets, conjugacy classes)
//! are what the coset-ordered tables and the spectral code are built from.

pub mod catalogue;

use crate::error::{Error, Result};

/// A binary operation on `{1, .., n}` given by its Cayley table.
///
/// Entry `(a, b)` is stored row major at `(a-1)*n + (b-1)`; values are the
/// 1-based labels themselves.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Magma {
    n: usize,
    entries: Vec<usize>,
}

impl Magma {
    /// Builds a magma from table rows, checking shape and value range.
    pub fn from_rows(rows: &[Vec<usize>]) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::Parameter("empty multiplication table".into()));
        }
        let mut entries = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Parameter(format!(
                    "row {} has length {}, expected {}",
                    i + 1,
                    row.len(),
                    n
                )));
            }
            for &v in row {
                if v < 1 || v > n {
                    return Err(Error::Parameter(format!(
                        "table value {v} out of range 1..={n}"
                    )));
                }
                entries.push(v);
            }
        }
        Ok(Magma { n, entries })
    }

    /// Builds a magma of order `n` from a closure, used by the constructors.
    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> usize) -> Self {
        let mut entries = Vec::with_capacity(n * n);
        for a in 1..=n {
            for b in 1..=n {
                let v = f(a, b);
                debug_assert!((1..=n).contains(&v));
                entries.push(v);
            }
        }
        Magma { n, entries }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn op(&self, a: usize, b: usize) -> usize {
        self.entries[(a - 1) * self.n + (b - 1)]
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        (1..=self.n)
            .map(|a| (1..=self.n).map(|b| self.op(a, b)).collect())
            .collect()
    }

    /// True when every row and every column is a permutation of the labels.
    pub fn is_latin(&self) -> bool {
        let n = self.n;
        for a in 1..=n {
            let mut row = vec![false; n];
            let mut col = vec![false; n];
            for b in 1..=n {
                row[self.op(a, b) - 1] = true;
                col[self.op(b, a) - 1] = true;
            }
            if row.iter().any(|&s| !s) || col.iter().any(|&s| !s) {
                return false;
            }
        }
        true
    }

    /// Solves `a ∘ x = c`, if a solution exists (unique in a latin table).
    pub fn solve_left(&self, a: usize, c: usize) -> Option<usize> {
        (1..=self.n).find(|&x| self.op(a, x) == c)
    }

    /// Solves `x ∘ b = c`, if a solution exists (unique in a latin table).
    pub fn solve_right(&self, b: usize, c: usize) -> Option<usize> {
        (1..=self.n).find(|&x| self.op(x, b) == c)
    }

    /// The isomorphic copy in which new label `a` stands for old label
    /// `p(a)`: rows, columns and cell values are all relabeled together.
    pub fn conjugate(&self, p: &crate::perm::Perm) -> Magma {
        let to_old = |a: usize| p.apply(a - 1) + 1;
        let q = p.inverse();
        let to_new = |a: usize| q.apply(a - 1) + 1;
        Magma::from_fn(self.n, |a, b| to_new(self.op(to_old(a), to_old(b))))
    }
}

/// Outcome of the axiom-by-axiom inspection of a raw table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MagmaReport {
    pub latin: bool,
    pub associative: bool,
    /// Two-sided identity, when one exists.
    pub identity: Option<usize>,
    /// True when an identity exists and every element has a two-sided inverse.
    pub inverses: bool,
}

impl MagmaReport {
    pub fn is_group(&self) -> bool {
        self.latin && self.associative && self.identity.is_some() && self.inverses
    }
}

/// Inspects a table for the group axioms without failing early.
pub fn magma_report(m: &Magma) -> MagmaReport {
    let n = m.order();
    let latin = m.is_latin();
    let mut associative = true;
    'assoc: for a in 1..=n {
        for b in 1..=n {
            for c in 1..=n {
                if m.op(m.op(a, b), c) != m.op(a, m.op(b, c)) {
                    associative = false;
                    break 'assoc;
                }
            }
        }
    }
    let identity = (1..=n).find(|&e| (1..=n).all(|a| m.op(e, a) == a && m.op(a, e) == a));
    let inverses = match identity {
        Some(e) => (1..=n).all(|a| (1..=n).any(|b| m.op(a, b) == e && m.op(b, a) == e)),
        None => false,
    };
    MagmaReport {
        latin,
        associative,
        identity,
        inverses,
    }
}

/// A cyclic subgroup `⟨s⟩`, with its elements listed in power order
/// `e, s, s², ..` so that cosets inherit the same internal ordering.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubgroupData {
    pub generator: usize,
    pub elements: Vec<usize>,
}

impl SubgroupData {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, a: usize) -> bool {
        self.elements.contains(&a)
    }
}

/// A finite group: a verified table plus cached identity and inverses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    magma: Magma,
    identity: usize,
    inverse: Vec<usize>,
}

impl FiniteGroup {
    /// Verifies the full group axioms on `m` and caches the derived data.
    pub fn from_magma(m: Magma) -> Result<Self> {
        let report = magma_report(&m);
        if !report.latin {
            return Err(Error::Structure("table is not a latin square".into()));
        }
        if !report.associative {
            return Err(Error::Structure("operation is not associative".into()));
        }
        let identity = report
            .identity
            .ok_or_else(|| Error::Structure("no two-sided identity".into()))?;
        if !report.inverses {
            return Err(Error::Structure("some element has no inverse".into()));
        }
        let n = m.order();
        let inverse = (1..=n)
            .map(|a| (1..=n).find(|&b| m.op(a, b) == identity).unwrap())
            .collect();
        Ok(FiniteGroup {
            magma: m,
            identity,
            inverse,
        })
    }

    pub fn magma(&self) -> &Magma {
        &self.magma
    }

    pub fn order(&self) -> usize {
        self.magma.order()
    }

    #[inline]
    pub fn op(&self, a: usize, b: usize) -> usize {
        self.magma.op(a, b)
    }

    pub fn id(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a - 1]
    }

    pub fn power(&self, a: usize, k: usize) -> usize {
        let mut acc = self.identity;
        for _ in 0..k {
            acc = self.op(acc, a);
        }
        acc
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut acc = a;
        let mut k = 1;
        while acc != self.identity {
            acc = self.op(acc, a);
            k += 1;
        }
        k
    }

    /// Least common multiple of all element orders.
    pub fn exponent(&self) -> usize {
        fn gcd(a: usize, b: usize) -> usize {
            if b == 0 {
                a
            } else {
                gcd(b, a % b)
            }
        }
        (1..=self.order()).fold(1, |acc, a| {
            let d = self.element_order(a);
            acc / gcd(acc, d) * d
        })
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (1..=n).all(|a| (a..=n).all(|b| self.op(a, b) == self.op(b, a)))
    }

    /// Number of elements of order exactly two.
    pub fn involution_count(&self) -> usize {
        (1..=self.order())
            .filter(|&a| a != self.identity && self.op(a, a) == self.identity)
            .count()
    }

    /// Conjugacy classes, each sorted ascending, listed by smallest member.
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let n = self.order();
        let mut seen = vec![false; n];
        let mut classes = Vec::new();
        for a in 1..=n {
            if seen[a - 1] {
                continue;
            }
            let mut class: Vec<usize> = (1..=n)
                .map(|g| self.op(self.op(g, a), self.inv(g)))
                .collect();
            class.sort_unstable();
            class.dedup();
            for &x in &class {
                seen[x - 1] = true;
            }
            classes.push(class);
        }
        classes
    }

    /// The cyclic subgroup generated by `s`, elements in power order.
    pub fn subgroup_generated(&self, s: usize) -> SubgroupData {
        let mut elements = vec![self.identity];
        let mut acc = s;
        while acc != self.identity {
            elements.push(acc);
            acc = self.op(acc, s);
        }
        SubgroupData {
            generator: s,
            elements,
        }
    }

    /// All cyclic subgroups, one entry per distinct subgroup.  The stored
    /// generator is the smallest label generating it; the list is sorted by
    /// order and then by element set.
    pub fn cyclic_subgroups(&self) -> Vec<SubgroupData> {
        let mut found: Vec<(Vec<usize>, SubgroupData)> = Vec::new();
        for s in 1..=self.order() {
            let sub = self.subgroup_generated(s);
            let mut key = sub.elements.clone();
            key.sort_unstable();
            if !found.iter().any(|(k, _)| *k == key) {
                found.push((key, sub));
            }
        }
        found.sort_by(|a, b| (a.0.len(), &a.0).cmp(&(b.0.len(), &b.0)));
        found.into_iter().map(|(_, sub)| sub).collect()
    }

    /// Left cosets of `sub`, each listed `r, r·s, r·s², ..` following the
    /// subgroup's power order.  Representatives are chosen as the smallest
    /// label not yet covered, so the first coset is `sub` itself.
    pub fn left_cosets(&self, sub: &SubgroupData) -> Vec<Vec<usize>> {
        let n = self.order();
        let mut covered = vec![false; n];
        let mut cosets = Vec::new();
        for r in 1..=n {
            if covered[r - 1] {
                continue;
            }
            let coset: Vec<usize> = sub.elements.iter().map(|&s| self.op(r, s)).collect();
            for &x in &coset {
                covered[x - 1] = true;
            }
            cosets.push(coset);
        }
        cosets
    }
}

#[cfg(test)]
mod tests {
    use super::catalogue::*;
    use super::*;

    #[test]
    fn report_flags_each_axiom() {
        // Not latin.
        let m = Magma::from_rows(&[vec![1, 1], vec![2, 2]]).unwrap();
        let r = magma_report(&m);
        assert!(!r.latin);
        // Latin but not associative and without identity: the order-3
        // subtraction table x - y mod 3.
        let sub3 = Magma::from_fn(3, |a, b| ((a + 2 * (b - 1)) - 1) % 3 + 1);
        let r = magma_report(&sub3);
        assert!(r.latin);
        assert!(!r.associative);
        assert_eq!(r.identity, None);
        assert!(FiniteGroup::from_magma(sub3).is_err());
    }

    #[test]
    fn cyclic_group_basics() {
        let g = cyclic(6);
        assert_eq!(g.id(), 1);
        assert_eq!(g.op(2, 6), 1);
        assert_eq!(g.inv(3), 5);
        assert_eq!(g.element_order(2), 6);
        assert_eq!(g.element_order(3), 3);
        assert_eq!(g.element_order(4), 2);
        assert!(g.is_abelian());
        assert_eq!(g.involution_count(), 1);
    }

    #[test]
    fn symmetric3_structure() {
        let g = symmetric3();
        assert_eq!(g.order(), 6);
        assert!(!g.is_abelian());
        assert_eq!(g.involution_count(), 3);
        assert_eq!(
            g.conjugacy_classes(),
            vec![vec![1], vec![2, 3], vec![4, 5, 6]]
        );
        // Rotations have order 3, reflections order 2.
        assert_eq!(g.element_order(2), 3);
        assert_eq!(g.element_order(4), 2);
    }

    #[test]
    fn frobenius21_structure() {
        let g = frobenius21();
        assert_eq!(g.order(), 21);
        assert!(!g.is_abelian());
        assert_eq!(g.involution_count(), 0);
        for a in 2..=7 {
            assert_eq!(g.element_order(a), 7);
        }
        for a in 8..=21 {
            assert_eq!(g.element_order(a), 3);
        }
        let classes = g.conjugacy_classes();
        assert_eq!(
            classes,
            vec![
                vec![1],
                vec![2, 3, 5],
                vec![4, 6, 7],
                (8..=14).collect::<Vec<_>>(),
                (15..=21).collect::<Vec<_>>(),
            ]
        );
    }

    #[test]
    fn involution_counts_order_twelve() {
        assert_eq!(cyclic(12).involution_count(), 1);
        assert_eq!(dihedral(12).unwrap().involution_count(), 7);
        assert_eq!(dicyclic(12).unwrap().involution_count(), 1);
        assert_eq!(alternating4().involution_count(), 3);
        let c6c2 = direct_product(&cyclic(6), &cyclic(2));
        assert_eq!(c6c2.involution_count(), 3);
    }

    #[test]
    fn quaternion_group_shape() {
        let q8 = dicyclic(8).unwrap();
        assert_eq!(q8.order(), 8);
        assert!(!q8.is_abelian());
        assert_eq!(q8.involution_count(), 1);
        // Six elements of order 4.
        let fours = (1..=8).filter(|&a| q8.element_order(a) == 4).count();
        assert_eq!(fours, 6);
    }

    #[test]
    fn direct_product_of_coprime_cyclics_is_cyclic() {
        let g = direct_product(&cyclic(7), &cyclic(3));
        assert!(g.is_abelian());
        assert!((1..=21).any(|a| g.element_order(a) == 21));
    }

    #[test]
    fn subgroups_and_cosets() {
        let g = frobenius21();
        let subs = g.cyclic_subgroups();
        // Trivial, seven of order 3, one of order 7.
        assert_eq!(subs.iter().filter(|s| s.order() == 3).count(), 7);
        assert_eq!(subs.iter().filter(|s| s.order() == 7).count(), 1);
        let s7 = subs.iter().find(|s| s.order() == 7).unwrap();
        assert_eq!(s7.elements, vec![1, 2, 3, 4, 5, 6, 7]);
        let cosets = g.left_cosets(s7);
        assert_eq!(
            cosets,
            vec![
                (1..=7).collect::<Vec<_>>(),
                (8..=14).collect::<Vec<_>>(),
                (15..=21).collect::<Vec<_>>(),
            ]
        );
    }

    #[test]
    fn whole_catalogue_verifies() {
        for entry in catalogue() {
            let report = magma_report(entry.group.magma());
            assert!(report.is_group(), "{} failed group axioms", entry.name);
            assert!(entry.group.order() <= 24);
        }
    }
}
