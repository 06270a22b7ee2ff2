//! Coset orderings and the block-circulant presentation of division tables.
//!
//! For a group `G` of order `n` with cyclic subgroup `S = ⟨s⟩` of order `m`,
//! list the left cosets `a₁S = S, a₂S, ..` with each coset ordered
//! `aᵢ, aᵢs, .., aᵢs^{m-1}`.  The division table of `G` written in this
//! order consists of `k² = (n/m)²` circulant blocks and satisfies the
//! column-product, inverse-row, diagonal and transpose-duality conditions
//! verified by [`verify_proposition`].
//!
//! Throughout, tables produced here live in *position space*: rows, columns
//! and cell values all refer to positions `1..=n` of the chosen ordering,
//! so the table of the reordered quasigroup is literally its own operation.
//! The original element labels are kept alongside in [`BlockTable::labels`].

use crate::algebra::{FiniteGroup, Magma, SubgroupData};
use crate::error::{Error, Result};
use crate::pattern::Witness;
use serde::{Deserialize, Serialize};

/// An ordering of a group's elements by left cosets of a cyclic subgroup.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetOrdering {
    pub subgroup: SubgroupData,
    /// One representative per coset; the first is the identity.
    pub reps: Vec<usize>,
    /// `element_order[p-1]` is the element label placed at position `p`.
    pub element_order: Vec<usize>,
    position: Vec<usize>,
}

impl CosetOrdering {
    pub fn n(&self) -> usize {
        self.element_order.len()
    }

    pub fn m(&self) -> usize {
        self.subgroup.order()
    }

    pub fn k(&self) -> usize {
        self.reps.len()
    }

    pub fn element_at(&self, pos: usize) -> usize {
        self.element_order[pos - 1]
    }

    pub fn position_of(&self, label: usize) -> usize {
        self.position[label - 1]
    }
}

/// Builds the coset ordering for `g` and the cyclic subgroup `s`.
///
/// When `reps` is omitted, each representative is the smallest label not yet
/// covered, so the ordering is deterministic.  Custom representatives must
/// form a transversal starting with the identity.
pub fn make_ordering(
    g: &FiniteGroup,
    s: &SubgroupData,
    reps: Option<&[usize]>,
) -> Result<CosetOrdering> {
    let regenerated = g.subgroup_generated(s.generator);
    if regenerated.elements != s.elements {
        return Err(Error::Structure(format!(
            "elements {:?} are not the cyclic subgroup generated by {}",
            s.elements, s.generator
        )));
    }
    let n = g.order();
    let m = s.order();
    if !n.is_multiple_of(m) {
        return Err(Error::Structure(
            "subgroup order does not divide group order".into(),
        ));
    }
    let k = n / m;
    let chosen: Vec<usize> = match reps {
        None => g.left_cosets(s).into_iter().map(|c| c[0]).collect(),
        Some(list) => {
            if list.len() != k {
                return Err(Error::Transversal(format!(
                    "expected {k} representatives, got {}",
                    list.len()
                )));
            }
            if list[0] != g.id() {
                return Err(Error::Transversal(
                    "first representative must be the identity".into(),
                ));
            }
            list.to_vec()
        }
    };
    let mut element_order = Vec::with_capacity(n);
    let mut covered = vec![false; n];
    for &r in &chosen {
        if !(1..=n).contains(&r) {
            return Err(Error::Transversal(format!("representative {r} out of range")));
        }
        for &x in &s.elements {
            let e = g.op(r, x);
            if covered[e - 1] {
                return Err(Error::Transversal(format!(
                    "representatives do not form a transversal: element {e} covered twice"
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
    Ok(CosetOrdering {
        subgroup: s.clone(),
        reps: chosen,
        element_order,
        position,
    })
}

/// A compact description of one `m×m` block.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BlockDescriptor {
    /// `C(c₁,..,c_m)`: each row is the previous one shifted right.
    Circulant { symbols: Vec<usize> },
    /// `R(c₁,..,c_m)`: the anti-cyclic analogue, top row `c_m, c_{m-1}, .., c₁`.
    ReversedCirculant { symbols: Vec<usize> },
    /// Any other block, stored in full.
    Explicit { rows: Vec<Vec<usize>> },
}

impl BlockDescriptor {
    pub fn size(&self) -> usize {
        match self {
            BlockDescriptor::Circulant { symbols }
            | BlockDescriptor::ReversedCirculant { symbols } => symbols.len(),
            BlockDescriptor::Explicit { rows } => rows.len(),
        }
    }

    /// Entry at 1-based `(i, j)`.
    pub fn entry(&self, i: usize, j: usize) -> usize {
        let m = self.size() as isize;
        let (ii, jj) = (i as isize, j as isize);
        match self {
            BlockDescriptor::Circulant { symbols } => {
                symbols[(jj - ii).rem_euclid(m) as usize]
            }
            BlockDescriptor::ReversedCirculant { symbols } => {
                symbols[(m - ii - jj + 1).rem_euclid(m) as usize]
            }
            BlockDescriptor::Explicit { rows } => rows[i - 1][j - 1],
        }
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        let m = self.size();
        (1..=m)
            .map(|i| (1..=m).map(|j| self.entry(i, j)).collect())
            .collect()
    }

    pub fn is_circulant(&self) -> bool {
        matches!(self, BlockDescriptor::Circulant { .. })
    }

    pub fn is_reversed(&self) -> bool {
        matches!(self, BlockDescriptor::ReversedCirculant { .. })
    }
}

/// Classifies a square block, preferring circulant over reversed circulant
/// (for sizes up to 2 both readings can apply).
pub fn classify_block(rows: &[Vec<usize>]) -> BlockDescriptor {
    let as_circulant = BlockDescriptor::Circulant {
        symbols: rows[0].clone(),
    };
    if as_circulant.rows() == rows {
        return as_circulant;
    }
    let mut symbols = rows[0].clone();
    symbols.reverse();
    let as_reversed = BlockDescriptor::ReversedCirculant { symbols };
    if as_reversed.rows() == rows {
        return as_reversed;
    }
    BlockDescriptor::Explicit {
        rows: rows.to_vec(),
    }
}

/// A `k×k` grid of `m×m` block descriptors in position space, together with
/// the element labels behind the positions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockTable {
    pub m: usize,
    pub k: usize,
    /// `labels[p-1]` is the element label at position `p`.
    pub labels: Vec<usize>,
    blocks: Vec<BlockDescriptor>,
}

impl BlockTable {
    pub fn new(m: usize, k: usize, labels: Vec<usize>, blocks: Vec<BlockDescriptor>) -> Result<Self> {
        if labels.len() != m * k || blocks.len() != k * k {
            return Err(Error::Parameter("block table shape mismatch".into()));
        }
        if blocks.iter().any(|b| b.size() != m) {
            return Err(Error::Parameter("block size mismatch".into()));
        }
        Ok(BlockTable { m, k, labels, blocks })
    }

    pub fn n(&self) -> usize {
        self.m * self.k
    }

    /// Block at 1-based grid coordinates.
    pub fn block(&self, i: usize, j: usize) -> &BlockDescriptor {
        &self.blocks[(i - 1) * self.k + (j - 1)]
    }

    pub fn blocks(&self) -> &[BlockDescriptor] {
        &self.blocks
    }

    /// Table entry at 1-based positions.
    pub fn entry(&self, p: usize, q: usize) -> usize {
        let (bi, ri) = ((p - 1) / self.m, (p - 1) % self.m);
        let (bj, rj) = ((q - 1) / self.m, (q - 1) % self.m);
        self.blocks[bi * self.k + bj].entry(ri + 1, rj + 1)
    }

    /// Expands the grid into a full position-space table.
    pub fn expand(&self) -> Magma {
        Magma::from_fn(self.n(), |p, q| self.entry(p, q))
    }

    /// Slices a position-space table into classified blocks.
    pub fn from_magma(table: &Magma, m: usize, labels: Vec<usize>) -> Result<Self> {
        let n = table.order();
        if m == 0 || !n.is_multiple_of(m) {
            return Err(Error::Parameter(format!(
                "block size {m} does not divide table order {n}"
            )));
        }
        let k = n / m;
        let mut blocks = Vec::with_capacity(k * k);
        for bi in 0..k {
            for bj in 0..k {
                let rows: Vec<Vec<usize>> = (1..=m)
                    .map(|i| (1..=m).map(|j| table.op(bi * m + i, bj * m + j)).collect())
                    .collect();
                blocks.push(classify_block(&rows));
            }
        }
        BlockTable::new(m, k, labels, blocks)
    }
}

/// Builds the block-circulant division table of `g` in the given ordering.
pub fn build_ward_table(g: &FiniteGroup, ord: &CosetOrdering) -> BlockTable {
    let n = ord.n();
    let table = Magma::from_fn(n, |p, q| {
        ord.position_of(g.op(ord.element_at(p), g.inv(ord.element_at(q))))
    });
    let bt = BlockTable::from_magma(&table, ord.m(), ord.element_order.clone())
        .expect("ordering sizes are consistent");
    assert!(
        bt.blocks.iter().all(|b| b.is_circulant()),
        "coset-ordered division table of a group must have circulant blocks"
    );
    bt
}

/// Which row pairs the column-product test inspects.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RowMode {
    /// All pairs of rows.
    Full,
    /// Only the leading row of each block of the given size.
    LeadingRows(usize),
}

/// Finds a violation of the column-product condition
/// `m_pj ∘ m_qj = m_pl ∘ m_ql`, if any, on a position-space table.
pub fn column_product_violation(table: &Magma, mode: RowMode) -> Option<Witness> {
    let n = table.order();
    let rows: Vec<usize> = match mode {
        RowMode::Full => (1..=n).collect(),
        RowMode::LeadingRows(m) => (1..=n).step_by(m).collect(),
    };
    for (a, &p) in rows.iter().enumerate() {
        for &q in &rows[a + 1..] {
            let baseline = table.op(table.op(p, 1), table.op(q, 1));
            for c in 2..=n {
                let here = table.op(table.op(p, c), table.op(q, c));
                if here != baseline {
                    return Some(Witness::ColumnProduct {
                        rows: (p, q),
                        cols: (1, c),
                        products: (baseline, here),
                    });
                }
            }
        }
    }
    None
}

/// The column-product criterion as a boolean; in [`RowMode::Full`] this is
/// exactly the condition characterising division tables of groups under any
/// ordering.
pub fn column_product_criterion(table: &Magma, mode: RowMode) -> bool {
    column_product_violation(table, mode).is_none()
}

/// An ambient multiplicative system with two-sided inverses, used to check
/// table conditions against the true products rather than self-consistency.
pub trait InverseSystem {
    fn size(&self) -> usize;
    fn product(&self, a: usize, b: usize) -> usize;
    fn inverse_of(&self, a: usize) -> usize;
}

impl InverseSystem for FiniteGroup {
    fn size(&self) -> usize {
        self.order()
    }

    fn product(&self, a: usize, b: usize) -> usize {
        self.op(a, b)
    }

    fn inverse_of(&self, a: usize) -> usize {
        self.inv(a)
    }
}

/// Clause-by-clause verdict on the structural conditions of a block table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropositionReport {
    /// (i) every block is a circulant.
    pub circulant_blocks: bool,
    /// (ii) column products are row-pair constants.
    pub column_products: bool,
    /// (iii) the first row maps each column to its inverse.
    pub first_row_inverses: bool,
    /// (iv) the diagonal is constantly the identity position.
    pub constant_diagonal: bool,
    /// (v) transpose duality: `m_qp = (m_pq)'`.
    pub transpose_duality: bool,
    /// The block-set identity: entries of block `(i,j)` form the set
    /// `aᵢS(aⱼS)⁻¹` of size `m`.  Only computed when an ambient system is
    /// supplied.
    pub coset_block_sets: Option<bool>,
}

impl PropositionReport {
    pub fn all_hold(&self) -> bool {
        self.circulant_blocks
            && self.column_products
            && self.first_row_inverses
            && self.constant_diagonal
            && self.transpose_duality
            && self.coset_block_sets.unwrap_or(true)
    }
}

/// Verifies the block-table conditions, optionally against an ambient system
/// (group or loop) that supplies true products and inverses.
pub fn verify_proposition(
    bt: &BlockTable,
    ambient: Option<&dyn InverseSystem>,
) -> PropositionReport {
    let table = bt.expand();
    let n = table.order();
    let circulant_blocks = bt
        .blocks
        .iter()
        .all(|b| classify_block(&b.rows()).is_circulant());
    let column_products = column_product_criterion(&table, RowMode::Full);
    let iota = |q: usize| table.op(1, q);
    let first_row_inverses = match ambient {
        Some(sys) => (1..=n).all(|q| {
            bt.labels[iota(q) - 1] == sys.inverse_of(bt.labels[q - 1])
        }),
        None => (1..=n).all(|q| iota(iota(q)) == q) && iota(1) == 1,
    };
    let constant_diagonal = (1..=n).all(|p| table.op(p, p) == 1);
    let transpose_duality = (1..=n).all(|p| (1..=n).all(|q| table.op(q, p) == iota(table.op(p, q))));
    let coset_block_sets = ambient.map(|sys| {
        let m = bt.m;
        (1..=bt.k).all(|i| {
            (1..=bt.k).all(|j| {
                let coset = |b: usize| &bt.labels[(b - 1) * m..b * m];
                let mut products: Vec<usize> = coset(i)
                    .iter()
                    .flat_map(|&x| coset(j).iter().map(move |&y| (x, y)))
                    .map(|(x, y)| sys.product(x, sys.inverse_of(y)))
                    .collect();
                products.sort_unstable();
                products.dedup();
                let mut block_labels: Vec<usize> = bt
                    .block(i, j)
                    .rows()
                    .into_iter()
                    .flatten()
                    .map(|pos| bt.labels[pos - 1])
                    .collect();
                block_labels.sort_unstable();
                block_labels.dedup();
                products.len() == m && products == block_labels
            })
        })
    });
    PropositionReport {
        circulant_blocks,
        column_products,
        first_row_inverses,
        constant_diagonal,
        transpose_duality,
        coset_block_sets,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::catalogue::*;
    use crate::perm::Perm;
    use crate::ward;

    fn c(symbols: &[usize]) -> BlockDescriptor {
        BlockDescriptor::Circulant {
            symbols: symbols.to_vec(),
        }
    }

    fn ordering(g: &FiniteGroup, sub_order: usize) -> CosetOrdering {
        let s = g
            .cyclic_subgroups()
            .into_iter()
            .find(|s| s.order() == sub_order)
            .unwrap();
        make_ordering(g, &s, None).unwrap()
    }

    #[test]
    fn symmetric3_block_grid() {
        let g = symmetric3();
        let ord = ordering(&g, 3);
        assert_eq!(ord.element_order, vec![1, 2, 3, 4, 5, 6]);
        let bt = build_ward_table(&g, &ord);
        assert_eq!(bt.block(1, 1), &c(&[1, 3, 2]));
        assert_eq!(bt.block(1, 2), &c(&[4, 5, 6]));
        assert_eq!(bt.block(2, 1), &c(&[4, 6, 5]));
        assert_eq!(bt.block(2, 2), &c(&[1, 2, 3]));
        let expected: Vec<Vec<usize>> = crate::ward::tests::S3_DIVISION
            .iter()
            .map(|r| r.to_vec())
            .collect();
        assert_eq!(bt.expand().rows(), expected);
    }

    #[test]
    fn frobenius21_block_grid() {
        let g = frobenius21();
        let ord = ordering(&g, 7);
        assert_eq!(ord.element_order, (1..=21).collect::<Vec<_>>());
        assert_eq!(ord.reps, vec![1, 8, 15]);
        let bt = build_ward_table(&g, &ord);
        let expected = [
            c(&[1, 7, 6, 5, 4, 3, 2]),
            c(&[15, 18, 21, 17, 20, 16, 19]),
            c(&[8, 13, 11, 9, 14, 12, 10]),
            c(&[8, 14, 13, 12, 11, 10, 9]),
            c(&[1, 4, 7, 3, 6, 2, 5]),
            c(&[15, 20, 18, 16, 21, 19, 17]),
            c(&[15, 21, 20, 19, 18, 17, 16]),
            c(&[8, 11, 14, 10, 13, 9, 12]),
            c(&[1, 6, 4, 2, 7, 5, 3]),
        ];
        assert_eq!(bt.blocks(), &expected);
    }

    #[test]
    fn whole_group_as_single_block() {
        let g = cyclic(4);
        let ord = ordering(&g, 4);
        let bt = build_ward_table(&g, &ord);
        assert_eq!(bt.k, 1);
        assert_eq!(bt.block(1, 1), &c(&[1, 4, 3, 2]));
    }

    #[test]
    fn proposition_holds_for_groups() {
        for (g, sub) in [
            (symmetric3(), 3),
            (frobenius21(), 7),
            (dicyclic(8).unwrap(), 4),
            (dihedral(12).unwrap(), 2),
        ] {
            let ord = ordering(&g, sub);
            let bt = build_ward_table(&g, &ord);
            let report = verify_proposition(&bt, Some(&g));
            assert!(report.all_hold(), "failed for order {}: {report:?}", g.order());
        }
    }

    #[test]
    fn column_products_characterise_division_tables() {
        let q = ward::wa(&symmetric3());
        assert!(column_product_criterion(q.magma(), RowMode::Full));
        assert!(column_product_criterion(q.magma(), RowMode::LeadingRows(3)));
        // Any simultaneous relabeling keeps the property.
        let p = Perm::from_images(vec![3, 0, 4, 1, 5, 2]).unwrap();
        let relabeled = q.magma().conjugate(&p);
        assert!(column_product_criterion(&relabeled, RowMode::Full));
        // A plain multiplication table is not a division table.
        assert!(!column_product_criterion(symmetric3().magma(), RowMode::Full));
        // Trivial table.
        let one = Magma::from_rows(&[vec![1]]).unwrap();
        assert!(column_product_criterion(&one, RowMode::Full));
    }

    #[test]
    fn descriptor_expansion_rules() {
        let r = BlockDescriptor::ReversedCirculant {
            symbols: vec![10, 12, 11],
        };
        assert_eq!(
            r.rows(),
            vec![vec![11, 12, 10], vec![12, 10, 11], vec![10, 11, 12]]
        );
        // The reversed circulant of order 2 collapses into a circulant and
        // classification prefers the circulant reading.
        let r2 = BlockDescriptor::ReversedCirculant {
            symbols: vec![1, 2],
        };
        assert_eq!(classify_block(&r2.rows()), c(&[2, 1]));
        // A latin square that is neither.
        let neither = vec![
            vec![1, 2, 3, 4],
            vec![2, 1, 4, 3],
            vec![3, 4, 1, 2],
            vec![4, 3, 2, 1],
        ];
        assert!(matches!(
            classify_block(&neither),
            BlockDescriptor::Explicit { .. }
        ));
        // Round trip through classification.
        let cc = c(&[4, 5, 6]);
        assert_eq!(classify_block(&cc.rows()), cc);
    }

    #[test]
    fn ordering_validation() {
        let g = symmetric3();
        let s = g.subgroup_generated(2);
        // Wrong representative count.
        assert!(matches!(
            make_ordering(&g, &s, Some(&[1])),
            Err(Error::Transversal(_))
        ));
        // First representative not the identity.
        assert!(matches!(
            make_ordering(&g, &s, Some(&[2, 4])),
            Err(Error::Transversal(_))
        ));
        // Two representatives of the same coset.
        assert!(matches!(
            make_ordering(&g, &s, Some(&[1, 2])),
            Err(Error::Transversal(_))
        ));
        // Valid custom transversal.
        let ord = make_ordering(&g, &s, Some(&[1, 5])).unwrap();
        assert_eq!(ord.element_order[3], 5);
        // Tampered subgroup data.
        let bad = SubgroupData {
            generator: 2,
            elements: vec![1, 2, 4],
        };
        assert!(matches!(
            make_ordering(&g, &bad, None),
            Err(Error::Structure(_))
        ));
    }

    #[test]
    fn custom_transversal_still_satisfies_proposition() {
        let g = frobenius21();
        let s = g.subgroup_generated(2);
        let ord = make_ordering(&g, &s, Some(&[1, 9, 16])).unwrap();
        let bt = build_ward_table(&g, &ord);
        assert!(verify_proposition(&bt, Some(&g)).all_hold());
    }
}
