//! Loops with the antiautomorphic inverse property, the Chein double
//! construction, and generalized division tables.
//!
//! A loop has the antiautomorphic inverse property (AAIP) when
//! `(xy)⁻¹ = y⁻¹x⁻¹`; Moufang loops (`x(y(xz)) = ((xy)x)z`) are the classic
//! source.  For such a loop the generalized division quasigroup
//! `x ∘ y = x·y⁻¹` still yields a block table over a normal cyclic subgroup,
//! but the blocks may be reversed circulants rather than circulants.

use crate::algebra::{FiniteGroup, Magma, SubgroupData};
use crate::error::{Error, Result};
use crate::table::{BlockTable, InverseSystem};

/// A finite loop: a latin square with the two-sided identity 1, together
/// with cached inverse data and property flags.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LoopTable {
    magma: Magma,
    /// `inverse[x-1]` when every element has a two-sided inverse.
    inverse: Option<Vec<usize>>,
    pub aaip: bool,
    pub moufang: bool,
    pub diassociative: bool,
}

impl LoopTable {
    pub fn from_magma(magma: Magma) -> Result<Self> {
        let n = magma.order();
        if !magma.is_latin() {
            return Err(Error::Structure("loop table is not a latin square".into()));
        }
        if (1..=n).any(|x| magma.op(1, x) != x || magma.op(x, 1) != x) {
            return Err(Error::Structure(
                "element 1 is not a two-sided identity".into(),
            ));
        }
        let mut inverse = Vec::with_capacity(n);
        for x in 1..=n {
            match magma.solve_left(x, 1) {
                Some(y) if magma.op(y, x) == 1 => inverse.push(y),
                _ => {
                    inverse.clear();
                    break;
                }
            }
        }
        let inverse = (inverse.len() == n).then_some(inverse);
        let aaip = match &inverse {
            None => false,
            Some(inv) => (1..=n).all(|x| {
                (1..=n).all(|y| inv[magma.op(x, y) - 1] == magma.op(inv[y - 1], inv[x - 1]))
            }),
        };
        let moufang = (1..=n).all(|x| {
            (1..=n).all(|y| {
                (1..=n).all(|z| {
                    magma.op(x, magma.op(y, magma.op(x, z)))
                        == magma.op(magma.op(magma.op(x, y), x), z)
                })
            })
        });
        let diassociative = is_diassociative(&magma);
        Ok(LoopTable {
            magma,
            inverse,
            aaip,
            moufang,
            diassociative,
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

    pub fn has_two_sided_inverses(&self) -> bool {
        self.inverse.is_some()
    }

    /// Two-sided inverse, when the loop has them throughout.
    pub fn inv(&self, a: usize) -> Option<usize> {
        self.inverse.as_ref().map(|v| v[a - 1])
    }

    /// The right inverse `y_ρ` with `y·y_ρ = 1`; always defined in a loop.
    pub fn right_inverse(&self, y: usize) -> usize {
        self.magma.solve_left(y, 1).expect("latin row covers 1")
    }
}

impl InverseSystem for LoopTable {
    fn size(&self) -> usize {
        self.order()
    }

    fn product(&self, a: usize, b: usize) -> usize {
        self.op(a, b)
    }

    fn inverse_of(&self, a: usize) -> usize {
        self.inv(a).expect("loop has two-sided inverses")
    }
}

/// Associativity restricted to every 2-generated subloop.
fn is_diassociative(m: &Magma) -> bool {
    let n = m.order();
    for x in 1..=n {
        for y in x..=n {
            let mut closure = vec![false; n];
            closure[0] = true;
            closure[x - 1] = true;
            closure[y - 1] = true;
            loop {
                let members: Vec<usize> = (1..=n).filter(|&a| closure[a - 1]).collect();
                let mut grew = false;
                for &a in &members {
                    for &b in &members {
                        let c = m.op(a, b);
                        if !closure[c - 1] {
                            closure[c - 1] = true;
                            grew = true;
                        }
                    }
                }
                if !grew {
                    break;
                }
            }
            let members: Vec<usize> = (1..=n).filter(|&a| closure[a - 1]).collect();
            for &a in &members {
                for &b in &members {
                    for &c in &members {
                        if m.op(m.op(a, b), c) != m.op(a, m.op(b, c)) {
                            return false;
                        }
                    }
                }
            }
        }
    }
    true
}

/// Chein's double `M₂ₙ(G, 2)`: on `G ∪ Gu` (with `gu` numbered `n + g`)
/// multiply by `g·h = gh`, `g·(hu) = (hg)u`, `(gu)·h = (gh⁻¹)u`,
/// `(gu)·(hu) = h⁻¹g`.  The result is Moufang and is nonassociative exactly
/// when `G` is nonabelian.
pub fn chein(g: &FiniteGroup) -> LoopTable {
    let n = g.order();
    let magma = Magma::from_fn(2 * n, |x, y| match (x > n, y > n) {
        (false, false) => g.op(x, y),
        (false, true) => n + g.op(y - n, x),
        (true, false) => n + g.op(x - n, g.inv(y)),
        (true, true) => g.op(g.inv(y - n), x - n),
    });
    LoopTable::from_magma(magma).expect("Chein doubles are loops")
}

/// The generalized division quasigroup `x ∘ y = x·y⁻¹` of a loop with
/// two-sided inverses and the antiautomorphic inverse property.
pub fn gwq(l: &LoopTable) -> Result<Magma> {
    if !l.has_two_sided_inverses() {
        return Err(Error::Structure(
            "generalized division needs two-sided inverses".into(),
        ));
    }
    if !l.aaip {
        return Err(Error::Precondition(
            "generalized division needs the antiautomorphic inverse property".into(),
        ));
    }
    let n = l.order();
    Ok(Magma::from_fn(n, |x, y| l.op(x, l.inv(y).unwrap())))
}

/// The right-division table `x ∘ y = x·y_ρ` of an arbitrary loop.  The
/// diagonal is constantly the identity, but transpose duality can fail.
pub fn gwq_right_division(l: &LoopTable) -> Magma {
    let n = l.order();
    let rho: Vec<usize> = (1..=n).map(|y| l.right_inverse(y)).collect();
    Magma::from_fn(n, |x, y| l.op(x, rho[y - 1]))
}

/// The subloop generated by one element through left powers
/// `x, x·x, x·(x·x), ..`, required to close into a cyclic group.
pub fn cyclic_subloop(l: &LoopTable, x: usize) -> Result<SubgroupData> {
    let mut elements = vec![1];
    let mut cur = x;
    while cur != 1 {
        if elements.contains(&cur) {
            return Err(Error::Structure(format!(
                "powers of {x} do not close into a group"
            )));
        }
        elements.push(cur);
        cur = l.op(x, cur);
    }
    for &a in &elements {
        for &b in &elements {
            if !elements.contains(&l.op(a, b)) {
                return Err(Error::Structure(format!(
                    "powers of {x} are not closed under the operation"
                )));
            }
            for &c in &elements {
                if l.op(l.op(a, b), c) != l.op(a, l.op(b, c)) {
                    return Err(Error::Structure(format!(
                        "powers of {x} do not associate"
                    )));
                }
            }
        }
    }
    let mut ordered = vec![1];
    let mut cur = x;
    while cur != 1 {
        ordered.push(cur);
        cur = l.op(cur, x);
    }
    Ok(SubgroupData {
        generator: x,
        elements: ordered,
    })
}

/// Builds the block table of `gwq(l)` over the cosets of a cyclic subloop.
///
/// The cosets must partition the loop and every block-product set
/// `aᵢS·(aⱼS)⁻¹` must have exactly `|S|` elements; both can fail for
/// subloops of nonassociative loops and are reported as structure errors.
pub fn build_gwq_block_table(
    l: &LoopTable,
    s: &SubgroupData,
    reps: Option<&[usize]>,
) -> Result<BlockTable> {
    let division = gwq(l)?;
    let regenerated = cyclic_subloop(l, s.generator)?;
    if regenerated.elements != s.elements {
        return Err(Error::Structure(format!(
            "elements {:?} are not the cyclic subloop generated by {}",
            s.elements, s.generator
        )));
    }
    let n = l.order();
    let m = s.order();
    if !n.is_multiple_of(m) {
        return Err(Error::Structure(
            "subloop order does not divide loop order".into(),
        ));
    }
    let k = n / m;
    let chosen: Vec<usize> = match reps {
        Some(list) => {
            if list.len() != k || list[0] != 1 {
                return Err(Error::Transversal(
                    "need one representative per coset, identity first".into(),
                ));
            }
            list.to_vec()
        }
        None => {
            let mut covered = vec![false; n];
            let mut out = Vec::with_capacity(k);
            for a in 1..=n {
                if covered[a - 1] {
                    continue;
                }
                out.push(a);
                for &x in &s.elements {
                    covered[l.op(a, x) - 1] = true;
                }
            }
            out
        }
    };
    let mut element_order = Vec::with_capacity(n);
    let mut covered = vec![false; n];
    for &r in &chosen {
        for &x in &s.elements {
            let e = l.op(r, x);
            if covered[e - 1] {
                return Err(Error::Structure(format!(
                    "cosets do not partition the loop: element {e} covered twice"
                )));
            }
            covered[e - 1] = true;
            element_order.push(e);
        }
    }
    let mut position = vec![0; n];
    for (i, &e) in element_order.iter().enumerate() {
        position[e - 1] = i + 1;
    }
    for i in 0..k {
        for j in 0..k {
            let mut products = Vec::with_capacity(m * m);
            for &x in &element_order[i * m..(i + 1) * m] {
                for &y in &element_order[j * m..(j + 1) * m] {
                    products.push(division.op(x, y));
                }
            }
            products.sort_unstable();
            products.dedup();
            if products.len() != m {
                return Err(Error::Structure(format!(
                    "block ({}, {}) spreads over {} symbols instead of {m}",
                    i + 1,
                    j + 1,
                    products.len()
                )));
            }
        }
    }
    let table = Magma::from_fn(n, |p, q| {
        position[division.op(element_order[p - 1], element_order[q - 1]) - 1]
    });
    BlockTable::from_magma(&table, m, element_order)
}

/// The 6-element loop showing that conditions (i) and (iii)-(v) do not force
/// a group: its division table satisfies everything but the column-product
/// condition (ii).  Obtained by permuting columns 2 and 3 of the table
/// `[[C(1,3,2), C(4,5,6)], [C(4,6,5), C(1,3,2)]]`.
pub fn smallest_counterexample_loop() -> LoopTable {
    let c = |symbols: &[usize]| crate::table::BlockDescriptor::Circulant {
        symbols: symbols.to_vec(),
    };
    let q = BlockTable::new(
        3,
        2,
        (1..=6).collect(),
        vec![c(&[1, 3, 2]), c(&[4, 5, 6]), c(&[4, 6, 5]), c(&[1, 3, 2])],
    )
    .unwrap()
    .expand();
    let swapped = Magma::from_fn(6, |x, y| match y {
        2 => q.op(x, 3),
        3 => q.op(x, 2),
        _ => q.op(x, y),
    });
    LoopTable::from_magma(swapped).expect("the doctored table is a loop")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::catalogue::*;
    use crate::algebra::magma_report;
    use crate::pattern::extract_pattern;
    use crate::table::{
        build_ward_table, make_ordering, verify_proposition, BlockDescriptor,
    };
    use crate::ward::{wa, WardQuasigroup};

    fn c(symbols: &[usize]) -> BlockDescriptor {
        BlockDescriptor::Circulant {
            symbols: symbols.to_vec(),
        }
    }

    /// Reversed circulant written by its first row, as table displays do.
    fn r(first_row: &[usize]) -> BlockDescriptor {
        let mut symbols = first_row.to_vec();
        symbols.reverse();
        BlockDescriptor::ReversedCirculant { symbols }
    }

    /// A loop of order 5 with left and right inverses that disagree.
    fn lopsided5() -> LoopTable {
        let rows = vec![
            vec![1, 2, 3, 4, 5],
            vec![2, 4, 1, 5, 3],
            vec![3, 5, 4, 2, 1],
            vec![4, 1, 5, 3, 2],
            vec![5, 3, 2, 1, 4],
        ];
        LoopTable::from_magma(Magma::from_rows(&rows).unwrap()).unwrap()
    }

    #[test]
    fn chein_over_abelian_groups_is_associative() {
        for g in [cyclic(3), cyclic(4), elementary_abelian2(2)] {
            let l = chein(&g);
            assert_eq!(l.order(), 2 * g.order());
            assert!(l.moufang && l.aaip && l.diassociative);
            assert!(magma_report(l.magma()).is_group());
            assert!(WardQuasigroup::from_magma(gwq(&l).unwrap()).is_ok());
        }
    }

    #[test]
    fn chein_doubles_of_nonabelian_groups_are_proper_moufang() {
        for g in [symmetric3(), dihedral(8).unwrap(), dicyclic(8).unwrap()] {
            let l = chein(&g);
            assert!(l.moufang && l.diassociative && l.aaip);
            assert!(!magma_report(l.magma()).associative);
        }
    }

    #[test]
    fn m12_has_nine_involutions_unlike_any_group() {
        let l = chein(&symmetric3());
        let involutions = (2..=12).filter(|&x| l.op(x, x) == 1).count();
        assert_eq!(involutions, 9);
        for entry in catalogue() {
            if entry.group.order() == 12 {
                assert_ne!(
                    entry.group.involution_count(),
                    9,
                    "{} has 9 involutions",
                    entry.name
                );
            }
        }
    }

    #[test]
    fn m12_block_table_matches_the_known_grid() {
        let l = chein(&symmetric3());
        let s = cyclic_subloop(&l, 2).unwrap();
        assert_eq!(s.elements, vec![1, 2, 3]);
        let bt = build_gwq_block_table(&l, &s, None).unwrap();
        let expected = [
            c(&[1, 3, 2]),
            c(&[4, 5, 6]),
            c(&[7, 8, 9]),
            c(&[10, 11, 12]),
            c(&[4, 6, 5]),
            c(&[1, 2, 3]),
            r(&[10, 12, 11]),
            r(&[7, 9, 8]),
            c(&[7, 9, 8]),
            r(&[10, 12, 11]),
            c(&[1, 2, 3]),
            r(&[4, 6, 5]),
            c(&[10, 12, 11]),
            r(&[7, 9, 8]),
            r(&[4, 6, 5]),
            c(&[1, 2, 3]),
        ];
        assert_eq!(bt.blocks(), &expected);
        // Circulants on the first block row, first column and diagonal,
        // reversed circulants everywhere else; the off blocks are symmetric.
        for i in 1..=4 {
            for j in 1..=4 {
                let b = bt.block(i, j);
                if i == 1 || j == 1 || i == j {
                    assert!(b.is_circulant(), "block ({i},{j})");
                } else {
                    assert!(b.is_reversed(), "block ({i},{j})");
                    assert_eq!(b, bt.block(j, i));
                }
            }
        }
        let report = verify_proposition(&bt, Some(&l));
        assert!(!report.circulant_blocks);
        assert!(!report.column_products);
        assert!(report.first_row_inverses);
        assert!(report.constant_diagonal);
        assert!(report.transpose_duality);
        assert_eq!(report.coset_block_sets, Some(true));
        // Nine non-identity fixed points in the inverse pattern.
        let pat = extract_pattern(&bt).unwrap();
        let fixed = (2..=12).filter(|&p| pat.apply(p) == p).count();
        assert_eq!(fixed, 9);
    }

    #[test]
    fn order16_chein_doubles_classify_into_c_and_r_blocks() {
        for g in [dihedral(8).unwrap(), dicyclic(8).unwrap()] {
            let l = chein(&g);
            let gen = (2..=8)
                .find(|&x| cyclic_subloop(&l, x).is_ok_and(|s| s.order() == 4))
                .unwrap();
            let s = cyclic_subloop(&l, gen).unwrap();
            let bt = build_gwq_block_table(&l, &s, None).unwrap();
            for i in 1..=4 {
                for j in 1..=4 {
                    let b = bt.block(i, j);
                    if i == 1 || j == 1 || i == j {
                        assert!(b.is_circulant(), "block ({i},{j}) of order {}", g.order());
                    } else {
                        assert!(
                            b.is_circulant() || b.is_reversed(),
                            "block ({i},{j}) of order {}",
                            g.order()
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn groups_fed_through_the_loop_path_reproduce_wa() {
        let g = symmetric3();
        let l = LoopTable::from_magma(g.magma().clone()).unwrap();
        assert!(l.aaip && l.moufang && l.diassociative);
        assert_eq!(gwq(&l).unwrap(), *wa(&g).magma());
        let s = cyclic_subloop(&l, 2).unwrap();
        let bt = build_gwq_block_table(&l, &s, None).unwrap();
        let sg = g.subgroup_generated(2);
        let ord = make_ordering(&g, &sg, None).unwrap();
        assert_eq!(bt.blocks(), build_ward_table(&g, &ord).blocks());
    }

    #[test]
    fn counterexample_loop_fails_exactly_condition_two() {
        let l = smallest_counterexample_loop();
        assert_eq!(l.order(), 6);
        assert!(!magma_report(l.magma()).associative);
        assert!(l.aaip);
        assert!(!l.moufang);
        assert!(!l.diassociative);
        let s = cyclic_subloop(&l, 2).unwrap();
        let bt = build_gwq_block_table(&l, &s, None).unwrap();
        assert_eq!(
            bt.blocks(),
            &[c(&[1, 3, 2]), c(&[4, 5, 6]), c(&[4, 6, 5]), c(&[1, 3, 2])]
        );
        let report = verify_proposition(&bt, Some(&l));
        assert!(report.circulant_blocks);
        assert!(!report.column_products);
        assert!(report.first_row_inverses);
        assert!(report.constant_diagonal);
        assert!(report.transpose_duality);
        assert_eq!(report.coset_block_sets, Some(true));
    }

    #[test]
    fn lopsided_loop_is_rejected_by_gwq_but_divides_on_the_right() {
        let l = lopsided5();
        assert!(!l.has_two_sided_inverses());
        assert!(!l.aaip);
        assert!(matches!(gwq(&l), Err(Error::Structure(_))));
        let rd = gwq_right_division(&l);
        assert!((1..=5).all(|x| rd.op(x, x) == 1));
        assert!(rd.is_latin());
    }

    #[test]
    fn subloop_validation_and_partition_failures() {
        let l = smallest_counterexample_loop();
        let bad = SubgroupData {
            generator: 2,
            elements: vec![1, 2],
        };
        assert!(matches!(
            build_gwq_block_table(&l, &bad, None),
            Err(Error::Structure(_))
        ));
        // {1, 4} is a subloop but its block products overflow.
        let s4 = cyclic_subloop(&l, 4).unwrap();
        assert_eq!(s4.elements, vec![1, 4]);
        assert!(matches!(
            build_gwq_block_table(&l, &s4, None),
            Err(Error::Structure(_))
        ));
    }
}
