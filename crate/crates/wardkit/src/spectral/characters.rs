//! Numeric character extraction from the induced-representation blocks.
//!
//! Each block `B_s` gives a class function by tracing its images on class
//! representatives.  Rows with self inner product 1 are irreducible as they
//! stand.  A reducible block whose image matrices commute is a direct sum
//! of linear characters, so it is split completely by refining joint
//! eigenspaces, with eigenvalue candidates drawn from the roots of unity of
//! the group exponent.  Blocks with noncommuting images and inner product
//! above 1 are reported unsplit with their norm, which keeps the output
//! honest when a full decomposition is out of reach.

use super::linalg::{self, CMatrix};
use super::{induced_rep, symbolic_group_matrix, unit_root, Scalar};
use crate::algebra::FiniteGroup;
use crate::table::CosetOrdering;
use num_complex::Complex;

/// One conjugacy class: members sorted ascending, smallest as representative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassInfo {
    pub representative: usize,
    pub size: usize,
    pub members: Vec<usize>,
}

/// A class function obtained from the blocks: `values[c]` is the character
/// on the `c`-th class, and `norm` its self inner product (1 when
/// irreducible).
#[derive(Debug, Clone)]
pub struct CharacterRow<T: Scalar> {
    pub degree: usize,
    pub values: Vec<Complex<T>>,
    pub norm: T,
}

#[derive(Debug, Clone)]
pub struct CharacterTable<T: Scalar> {
    pub classes: Vec<ClassInfo>,
    pub rows: Vec<CharacterRow<T>>,
}

impl<T: Scalar> CharacterTable<T> {
    pub fn group_order(&self) -> usize {
        self.classes.iter().map(|c| c.size).sum()
    }

    /// True when the rows form the full irreducible character table: one row
    /// per class, every norm 1, and squared degrees summing to the order.
    pub fn is_complete(&self) -> bool {
        let tol = T::from(1e-6).unwrap();
        self.rows.len() == self.classes.len()
            && self
                .rows
                .iter()
                .all(|row| (row.norm - T::one()).abs() < tol)
            && self.rows.iter().map(|r| r.degree * r.degree).sum::<usize>() == self.group_order()
    }
}

/// Reports a pair of irrational values as roots of an integer quadratic
/// `x² − sx + p`, when `s = a+b` and `p = a·b` round to integers within 1e-6.
pub fn quadratic_note<T: Scalar>(a: Complex<T>, b: Complex<T>) -> Option<(i64, i64)> {
    let tol = 1e-6;
    let s = a + b;
    let p = a * b;
    let (sre, sim) = (s.re.to_f64()?, s.im.to_f64()?);
    let (pre, pim) = (p.re.to_f64()?, p.im.to_f64()?);
    if sim.abs() > tol || pim.abs() > tol {
        return None;
    }
    if (sre - sre.round()).abs() > tol || (pre - pre.round()).abs() > tol {
        return None;
    }
    Some((sre.round() as i64, pre.round() as i64))
}

fn complex_zero<T: Scalar>() -> Complex<T> {
    Complex::new(T::zero(), T::zero())
}

fn inner_product_norm<T: Scalar>(values: &[Complex<T>], classes: &[ClassInfo], n: usize) -> T {
    let total = values
        .iter()
        .zip(classes)
        .fold(T::zero(), |acc, (z, c)| {
            acc + T::from(c.size).unwrap() * z.norm_sqr()
        });
    total / T::from(n).unwrap()
}

fn mat_vec<T: Scalar>(a: &CMatrix<T>, v: &[Complex<T>]) -> Vec<Complex<T>> {
    a.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .fold(complex_zero(), |acc, (&x, &y)| acc + x * y)
        })
        .collect()
}

/// Matrix of `a` restricted to the span of the orthonormal `basis`:
/// `R[u][v] = ⟨b_u, a·b_v⟩`.
fn restrict<T: Scalar>(a: &CMatrix<T>, basis: &[Vec<Complex<T>>]) -> CMatrix<T> {
    basis
        .iter()
        .map(|bu| {
            basis
                .iter()
                .map(|bv| linalg::inner_product(bu, &mat_vec(a, bv)))
                .collect()
        })
        .collect()
}

/// `‖a·b_v − Σ_u R[u][v] b_u‖` maximised over `v`; nonzero means the span is
/// not invariant under `a` and must not be split along it.
fn invariance_residual<T: Scalar>(
    a: &CMatrix<T>,
    basis: &[Vec<Complex<T>>],
    restricted: &CMatrix<T>,
) -> T {
    let mut worst = T::zero();
    for (v, bv) in basis.iter().enumerate() {
        let image = mat_vec(a, bv);
        let mut recon = vec![complex_zero::<T>(); image.len()];
        for (u, bu) in basis.iter().enumerate() {
            for (x, &y) in recon.iter_mut().zip(bu) {
                *x = *x + restricted[u][v] * y;
            }
        }
        let res = image
            .iter()
            .zip(&recon)
            .fold(T::zero(), |acc, (&x, &y)| acc.max((x - y).norm()));
        worst = worst.max(res);
    }
    worst
}

/// Splits the span of `basis` into joint eigenspaces of `a`, assuming the
/// restriction is diagonalizable with eigenvalues among the `exponent`-th
/// roots of unity.  Returns `None` when no proper split happens.
fn split_by<T: Scalar>(
    a: &CMatrix<T>,
    basis: &[Vec<Complex<T>>],
    exponent: usize,
) -> Option<Vec<Vec<Vec<Complex<T>>>>> {
    let d = basis.len();
    let tol = T::structural_tol();
    let restricted = restrict(a, basis);
    if invariance_residual(a, basis, &restricted) > T::aggregate_tol() {
        return None;
    }
    let mut pieces: Vec<Vec<Vec<Complex<T>>>> = Vec::new();
    let mut covered = 0;
    for j in 0..exponent {
        let lam = unit_root::<T>(exponent, j as i64);
        let shifted: CMatrix<T> = restricted
            .iter()
            .enumerate()
            .map(|(u, row)| {
                row.iter()
                    .enumerate()
                    .map(|(v, &x)| if u == v { x - lam } else { x })
                    .collect()
            })
            .collect();
        let ns = linalg::nullspace(&shifted, tol);
        if ns.is_empty() {
            continue;
        }
        if ns.len() == d {
            return None;
        }
        let lifted: Vec<Vec<Complex<T>>> = ns
            .iter()
            .map(|coeffs| {
                let mut w = vec![complex_zero::<T>(); basis[0].len()];
                for (c, bu) in coeffs.iter().zip(basis) {
                    for (x, &y) in w.iter_mut().zip(bu) {
                        *x = *x + *c * y;
                    }
                }
                w
            })
            .collect();
        let ortho = linalg::orthonormalize(lifted, tol);
        covered += ortho.len();
        pieces.push(ortho);
        if covered == d {
            break;
        }
    }
    (covered == d && pieces.len() > 1).then_some(pieces)
}

/// Traces of the images restricted to a subspace, per conjugacy class.
fn restricted_traces<T: Scalar>(
    images: &[CMatrix<T>],
    basis: &[Vec<Complex<T>>],
    classes: &[ClassInfo],
) -> Vec<Complex<T>> {
    classes
        .iter()
        .map(|c| linalg::trace(&restrict(&images[c.representative - 1], basis)))
        .collect()
}

/// Character rows contributed by one block: either the block's own trace
/// row, or the rows of its linear constituents when the images commute.
fn block_rows<T: Scalar>(
    images: &[CMatrix<T>],
    classes: &[ClassInfo],
    exponent: usize,
    n: usize,
) -> Vec<(usize, Vec<Complex<T>>)> {
    let r = images[0].len();
    let chi: Vec<Complex<T>> = classes
        .iter()
        .map(|c| linalg::trace(&images[c.representative - 1]))
        .collect();
    let whole = vec![(r, chi.clone())];
    if (inner_product_norm(&chi, classes, n) - T::one()).abs() < T::from(1e-6).unwrap() {
        return whole;
    }
    let mut unique: Vec<&CMatrix<T>> = Vec::new();
    for img in images {
        if !unique
            .iter()
            .any(|u| linalg::max_abs_diff(u, img) < T::structural_tol())
        {
            unique.push(img);
        }
    }
    let commuting = unique.iter().enumerate().all(|(i, a)| {
        unique.iter().skip(i + 1).all(|b| {
            linalg::max_abs_diff(&linalg::mat_mul(a, b), &linalg::mat_mul(b, a))
                < T::aggregate_tol()
        })
    });
    if !commuting {
        return whole;
    }
    let mut subspaces: Vec<Vec<Vec<Complex<T>>>> = vec![linalg::identity::<T>(r)];
    for a in &unique {
        let mut next = Vec::new();
        for basis in subspaces {
            if basis.len() > 1 {
                if let Some(pieces) = split_by(a, &basis, exponent) {
                    next.extend(pieces);
                    continue;
                }
            }
            next.push(basis);
        }
        subspaces = next;
    }
    subspaces
        .into_iter()
        .map(|basis| (basis.len(), restricted_traces(images, &basis, classes)))
        .collect()
}

fn rows_close<T: Scalar>(a: &[Complex<T>], b: &[Complex<T>]) -> bool {
    let tol = T::from(1e-6).unwrap();
    a.iter().zip(b).all(|(&x, &y)| (x - y).norm() < tol)
}

fn sort_key<T: Scalar>(row: &CharacterRow<T>) -> (usize, Vec<(i64, i64)>) {
    let grid = 1e-6;
    let key = row
        .values
        .iter()
        .map(|z| {
            (
                -(z.re.to_f64().unwrap() / grid).round() as i64,
                -(z.im.to_f64().unwrap() / grid).round() as i64,
            )
        })
        .collect();
    (row.degree, key)
}

/// Assembles the character table of `g` from the blocks of the given coset
/// ordering: rows sorted by degree and then by value (descending), one copy
/// per distinct character.
pub fn characters<T: Scalar>(g: &FiniteGroup, ord: &CosetOrdering) -> CharacterTable<T> {
    let sm = symbolic_group_matrix(g, ord);
    let n = g.order();
    let exponent = g.exponent();
    let classes: Vec<ClassInfo> = g
        .conjugacy_classes()
        .into_iter()
        .map(|members| ClassInfo {
            representative: members[0],
            size: members.len(),
            members,
        })
        .collect();
    let mut rows: Vec<CharacterRow<T>> = Vec::new();
    for s in 0..ord.m() {
        let images: Vec<CMatrix<T>> = (1..=n).map(|el| induced_rep(&sm, s, el)).collect();
        for (degree, values) in block_rows(&images, &classes, exponent, n) {
            if rows
                .iter()
                .any(|row| row.degree == degree && rows_close(&row.values, &values))
            {
                continue;
            }
            let norm = inner_product_norm(&values, &classes, n);
            rows.push(CharacterRow {
                degree,
                values,
                norm,
            });
        }
    }
    rows.sort_by_key(sort_key);
    CharacterTable { classes, rows }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::catalogue::*;
    use crate::table::make_ordering;

    type C = Complex<f64>;

    fn table_for(g: &FiniteGroup, generator: usize) -> CharacterTable<f64> {
        let ord = make_ordering(g, &g.subgroup_generated(generator), None).unwrap();
        characters::<f64>(g, &ord)
    }

    fn assert_value(z: C, re: f64, im: f64) {
        assert!(
            (z - C::new(re, im)).norm() < 1e-8,
            "got {z}, wanted {re}+{im}i"
        );
    }

    #[test]
    fn symmetric3_character_table() {
        let g = symmetric3();
        let table = table_for(&g, 2);
        assert_eq!(
            table.classes.iter().map(|c| c.size).collect::<Vec<_>>(),
            vec![1, 2, 3]
        );
        assert!(table.is_complete());
        let degrees: Vec<usize> = table.rows.iter().map(|r| r.degree).collect();
        assert_eq!(degrees, vec![1, 1, 2]);
        let expected = [
            [1.0, 1.0, 1.0],
            [1.0, 1.0, -1.0],
            [2.0, -1.0, 0.0],
        ];
        for (row, exp) in table.rows.iter().zip(&expected) {
            for (&z, &e) in row.values.iter().zip(exp) {
                assert_value(z, e, 0.0);
            }
            assert!((row.norm - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn frobenius21_character_table() {
        let g = frobenius21();
        let table = table_for(&g, 2);
        let class_sets: Vec<Vec<usize>> =
            table.classes.iter().map(|c| c.members.clone()).collect();
        assert_eq!(class_sets[0], vec![1]);
        assert_eq!(class_sets[1], vec![2, 3, 5]);
        assert_eq!(class_sets[2], vec![4, 6, 7]);
        assert_eq!(class_sets[3], (8..=14).collect::<Vec<_>>());
        assert_eq!(class_sets[4], (15..=21).collect::<Vec<_>>());
        assert!(table.is_complete());
        let degrees: Vec<usize> = table.rows.iter().map(|r| r.degree).collect();
        assert_eq!(degrees, vec![1, 1, 1, 3, 3]);
        let omega = 2.0 * std::f64::consts::PI / 3.0;
        // Linear rows: trivial, then the two cube-root patterns on the
        // nonnormal-coset classes.
        for &z in &table.rows[0].values {
            assert_value(z, 1.0, 0.0);
        }
        for i in 0..3 {
            assert_value(table.rows[1].values[i], 1.0, 0.0);
            assert_value(table.rows[2].values[i], 1.0, 0.0);
        }
        assert_value(table.rows[1].values[3], omega.cos(), omega.sin());
        assert_value(table.rows[1].values[4], (2.0 * omega).cos(), (2.0 * omega).sin());
        assert_value(table.rows[2].values[3], (2.0 * omega).cos(), (2.0 * omega).sin());
        assert_value(table.rows[2].values[4], omega.cos(), omega.sin());
        // Degree-3 rows: conjugate irrationalities on the order-7 classes,
        // zeros elsewhere.
        let root7 = 7.0f64.sqrt();
        let alpha = C::new(-0.5, root7 / 2.0);
        let beta = alpha.conj();
        let row_a = &table.rows[3];
        let row_b = &table.rows[4];
        assert_value(row_a.values[0], 3.0, 0.0);
        assert!((row_a.values[1] - alpha).norm() < 1e-8);
        assert!((row_a.values[2] - beta).norm() < 1e-8);
        assert!((row_b.values[1] - beta).norm() < 1e-8);
        assert!((row_b.values[2] - alpha).norm() < 1e-8);
        for row in [row_a, row_b] {
            assert!(row.values[3].norm() < 1e-9);
            assert!(row.values[4].norm() < 1e-9);
        }
        assert_eq!(
            quadratic_note(row_a.values[1], row_b.values[1]),
            Some((-1, 2))
        );
    }

    #[test]
    fn abelian_tables_are_complete_and_ordering_independent() {
        let g = cyclic(6);
        let via_whole = table_for(&g, 2);
        let via_third = table_for(&g, 3);
        assert!(via_whole.is_complete() && via_third.is_complete());
        assert_eq!(via_whole.rows.len(), 6);
        for (a, b) in via_whole.rows.iter().zip(&via_third.rows) {
            assert_eq!(a.degree, 1);
            assert!(rows_close(&a.values, &b.values));
        }
        let trivial = cyclic(1);
        let t = table_for(&trivial, 1);
        assert_eq!(t.rows.len(), 1);
        assert_value(t.rows[0].values[0], 1.0, 0.0);
    }

    #[test]
    fn elementary_abelian_block_splitting() {
        let g = elementary_abelian2(3);
        let table = table_for(&g, 2);
        assert!(table.is_complete());
        assert_eq!(table.rows.len(), 8);
        for row in &table.rows {
            assert_eq!(row.degree, 1);
            for &z in &row.values {
                assert!((z.norm() - 1.0).abs() < 1e-9);
                assert!(z.im.abs() < 1e-9);
            }
        }
    }

    #[test]
    fn noncommuting_blocks_stay_unsplit_but_honest() {
        let g = alternating4();
        let involution = (2..=12).find(|&x| g.element_order(x) == 2).unwrap();
        let table = table_for(&g, involution);
        assert!(!table.is_complete());
        assert_eq!(table.rows.len(), 2);
        for row in &table.rows {
            assert_eq!(row.degree, 6);
            assert!((row.norm - 4.0).abs() < 1e-6);
        }
        assert_value(table.rows[0].values[0], 6.0, 0.0);
    }

    #[test]
    fn dihedral_and_quaternion_tables() {
        for g in [dihedral(8).unwrap(), dicyclic(8).unwrap()] {
            let gen = (2..=8).find(|&x| g.element_order(x) == 4).unwrap();
            let table = table_for(&g, gen);
            assert!(table.is_complete());
            let mut degrees: Vec<usize> = table.rows.iter().map(|r| r.degree).collect();
            degrees.sort_unstable();
            assert_eq!(degrees, vec![1, 1, 1, 1, 2]);
        }
    }
}
