//! Partial diagonalization of group matrices over a coset ordering.
//!
//! The group matrix `D_G` has `(p, q)` entry `x_{g_p g_q⁻¹}`, so in a coset
//! ordering by a cyclic subgroup of order `m` it is an `r×r` grid of `m×m`
//! circulants.  Conjugating every block by the DFT matrix `P` turns each
//! circulant into a diagonal, and regrouping rows and columns by a fixed
//! permutation collects the result into `m` dense `r×r` blocks `B_1..B_m`.
//! Evaluating a block at the indicator assignment of one element yields a
//! matrix representation of the group (the representation induced from a
//! linear character of the subgroup), which is where the character
//! extraction in [`characters`] starts.
//!
//! All numerics are generic over [`Scalar`]; `f64` is the intended default
//! and `f32` is available with proportionally looser tolerances.

pub mod linalg;

mod characters;

pub use characters::{characters, quadratic_note, CharacterRow, CharacterTable, ClassInfo};

use crate::algebra::FiniteGroup;
use crate::perm::Perm;
use crate::table::{build_ward_table, CosetOrdering};
use linalg::{conj_transpose, mat_mul, max_abs_diff, zeros, CMatrix};
use num_complex::Complex;
use num_traits::float::FloatConst;
use num_traits::Float;
use std::fmt::{Debug, Display};

/// Floating-point scalars the spectral pipeline can run on, with the
/// tolerances used for structural zeros and aggregate identities.
pub trait Scalar: Float + FloatConst + Debug + Display + 'static {
    /// Bound for entries that should vanish exactly.
    fn structural_tol() -> Self;
    /// Looser bound for identities accumulated over many terms.
    fn aggregate_tol() -> Self;
}

impl Scalar for f64 {
    fn structural_tol() -> f64 {
        1e-9
    }
    fn aggregate_tol() -> f64 {
        1e-8
    }
}

impl Scalar for f32 {
    fn structural_tol() -> f32 {
        1e-4
    }
    fn aggregate_tol() -> f32 {
        1e-3
    }
}

/// `e^{2πi·power/m}` computed from polar form for stable accuracy.
pub fn unit_root<T: Scalar>(m: usize, power: i64) -> Complex<T> {
    let k = power.rem_euclid(m as i64);
    let angle = (T::PI() + T::PI()) * T::from(k).unwrap() / T::from(m).unwrap();
    Complex::from_polar(T::one(), angle)
}

/// The group matrix in variable-index form: entry `(p, q)` holds the index
/// `w` with `x_w = x_{g_p g_q⁻¹}`, everything in position space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymbolicGroupMatrix {
    pub n: usize,
    entries: Vec<Vec<usize>>,
    pub ordering: CosetOrdering,
}

impl SymbolicGroupMatrix {
    /// Variable index at 1-based `(p, q)`.
    pub fn entry(&self, p: usize, q: usize) -> usize {
        self.entries[p - 1][q - 1]
    }

    pub fn m(&self) -> usize {
        self.ordering.m()
    }

    pub fn r(&self) -> usize {
        self.ordering.k()
    }

    /// The circulant tuple of block `(i, j)`, read off its first row.
    pub fn block_symbols(&self, i: usize, j: usize) -> Vec<usize> {
        let m = self.m();
        (1..=m)
            .map(|t| self.entry((i - 1) * m + 1, (j - 1) * m + t))
            .collect()
    }
}

/// Builds the symbolic group matrix of `g` in the given coset ordering; its
/// entries coincide with the expanded block-circulant division table.
pub fn symbolic_group_matrix(g: &FiniteGroup, ord: &CosetOrdering) -> SymbolicGroupMatrix {
    let table = build_ward_table(g, ord).expand();
    let n = ord.n();
    let entries = (1..=n)
        .map(|p| (1..=n).map(|q| table.op(p, q)).collect())
        .collect();
    SymbolicGroupMatrix {
        n,
        entries,
        ordering: ord.clone(),
    }
}

/// The DFT matrix `P` with `P(j, k) = ρ^{(j-1)(k-1)}`, `ρ = e^{2πi/m}`,
/// whose columns are the common eigenvectors of all `m×m` circulants.
#[derive(Debug, Clone)]
pub struct FourierBlock<T: Scalar> {
    pub m: usize,
    pub omega: Complex<T>,
    p: CMatrix<T>,
}

impl<T: Scalar> FourierBlock<T> {
    pub fn new(m: usize) -> Self {
        assert!(m >= 1, "block size must be positive");
        let p = (0..m)
            .map(|j| (0..m).map(|k| unit_root(m, (j * k) as i64)).collect())
            .collect();
        FourierBlock {
            m,
            omega: unit_root(m, 1),
            p,
        }
    }

    pub fn p(&self) -> &CMatrix<T> {
        &self.p
    }

    /// `P⁻¹ = (1/m)·P*`, computed analytically.
    pub fn p_inverse(&self) -> CMatrix<T> {
        let f = Complex::new(T::one() / T::from(self.m).unwrap(), T::zero());
        linalg::scale(&conj_transpose(&self.p), f)
    }

    /// `max |P·P* − m·I|`; should sit at rounding level.
    pub fn unitarity_residual(&self) -> T {
        let mut target = zeros(self.m, self.m);
        for (i, row) in target.iter_mut().enumerate() {
            row[i] = Complex::new(T::from(self.m).unwrap(), T::zero());
        }
        max_abs_diff(&mat_mul(&self.p, &conj_transpose(&self.p)), &target)
    }
}

/// Eigenvalues of the circulant `C(c_1, .., c_m)`: `λ_s = Σ_j c_j ρ^{(j-1)s}`
/// for `s = 0..m-1`, matching the column order of `P`.
pub fn circulant_eigenvalues<T: Scalar>(coeffs: &[Complex<T>]) -> Vec<Complex<T>> {
    let m = coeffs.len();
    (0..m)
        .map(|s| {
            coeffs
                .iter()
                .enumerate()
                .fold(Complex::new(T::zero(), T::zero()), |acc, (j, &c)| {
                    acc + c * unit_root::<T>(m, (j * s) as i64)
                })
        })
        .collect()
}

/// Evaluates the group matrix at a full variable assignment.
pub fn evaluate_group_matrix<T: Scalar>(
    sm: &SymbolicGroupMatrix,
    values: &[Complex<T>],
) -> CMatrix<T> {
    assert_eq!(values.len(), sm.n, "assignment must cover every variable");
    sm.entries
        .iter()
        .map(|row| row.iter().map(|&w| values[w - 1]).collect())
        .collect()
}

/// The `Λ` grid of `H⁻¹ D_G H` with `H = diag(P, .., P)`: block `(i, j)`
/// contributes the eigenvalue vector of its circulant.  Returned as
/// `grid[i][j][s]` with 0-based `i, j < r` and `s < m`.
pub fn conjugate_by_h<T: Scalar>(
    sm: &SymbolicGroupMatrix,
    values: &[Complex<T>],
) -> Vec<Vec<Vec<Complex<T>>>> {
    assert_eq!(values.len(), sm.n, "assignment must cover every variable");
    let r = sm.r();
    (1..=r)
        .map(|i| {
            (1..=r)
                .map(|j| {
                    let coeffs: Vec<Complex<T>> = sm
                        .block_symbols(i, j)
                        .iter()
                        .map(|&w| values[w - 1])
                        .collect();
                    circulant_eigenvalues(&coeffs)
                })
                .collect()
        })
        .collect()
}

/// The regrouping permutation sending position `(i-1)m + s` to `(s-1)r + i`
/// (1-based), which collects the `s`-th diagonal entries of all `Λ` blocks
/// into one contiguous `r×r` block.
pub fn regroup_permutation(m: usize, r: usize) -> Perm {
    let images = (0..m * r)
        .map(|p| {
            let (i, s) = (p / m, p % m);
            s * r + i
        })
        .collect();
    Perm::from_images(images).expect("regrouping is a bijection")
}

/// Conjugation by the permutation matrix of `perm`:
/// `out[perm(i)][perm(j)] = mat[i][j]`.
pub fn conjugate_by_permutation<T: Scalar>(mat: &CMatrix<T>, perm: &Perm) -> CMatrix<T> {
    let n = mat.len();
    let mut out = zeros(n, n);
    for (i, row) in mat.iter().enumerate() {
        for (j, &x) in row.iter().enumerate() {
            out[perm.apply(i)][perm.apply(j)] = x;
        }
    }
    out
}

/// The fully regrouped form of an evaluated group matrix.
#[derive(Debug, Clone)]
pub struct SpectralForm<T: Scalar> {
    pub m: usize,
    pub r: usize,
    /// `lambda_grid[i][j][s]`: eigenvalue `s` of block `(i, j)`.
    pub lambda_grid: Vec<Vec<Vec<Complex<T>>>>,
    pub regroup: Perm,
    /// `diag_blocks[s]` is the `r×r` block `B_{s+1}`.
    pub diag_blocks: Vec<CMatrix<T>>,
}

impl<T: Scalar> SpectralForm<T> {
    /// The sparse `Λ` grid as a dense matrix (equal to `H⁻¹ D H`).
    pub fn lambda_matrix(&self) -> CMatrix<T> {
        let n = self.m * self.r;
        let mut out = zeros(n, n);
        for i in 0..self.r {
            for j in 0..self.r {
                for s in 0..self.m {
                    out[i * self.m + s][j * self.m + s] = self.lambda_grid[i][j][s];
                }
            }
        }
        out
    }

    /// `diag(B_1, .., B_m)` as a dense matrix.
    pub fn assemble_block_diagonal(&self) -> CMatrix<T> {
        let n = self.m * self.r;
        let mut out = zeros(n, n);
        for (s, block) in self.diag_blocks.iter().enumerate() {
            for i in 0..self.r {
                for j in 0..self.r {
                    out[s * self.r + i][s * self.r + j] = block[i][j];
                }
            }
        }
        out
    }
}

/// Runs the whole reduction at one assignment: eigenvalue grid, regrouping
/// permutation and the diagonal blocks `B_1..B_m`.
pub fn block_diagonalize<T: Scalar>(
    sm: &SymbolicGroupMatrix,
    values: &[Complex<T>],
) -> SpectralForm<T> {
    let (m, r) = (sm.m(), sm.r());
    let lambda_grid = conjugate_by_h(sm, values);
    let diag_blocks = (0..m)
        .map(|s| {
            (0..r)
                .map(|i| (0..r).map(|j| lambda_grid[i][j][s]).collect())
                .collect()
        })
        .collect();
    SpectralForm {
        m,
        r,
        lambda_grid,
        regroup: regroup_permutation(m, r),
        diag_blocks,
    }
}

/// Max-magnitude residual of the dense similarity chain
/// `R⁻¹ (H⁻¹ D H) R − diag(B_1..B_m)`, where the middle conjugation is done
/// with explicit matrix products rather than the eigenvalue formula.  This
/// is the oracle that the analytic `lambda_grid` matches brute force.
pub fn similarity_residual<T: Scalar>(
    sm: &SymbolicGroupMatrix,
    values: &[Complex<T>],
    form: &SpectralForm<T>,
) -> T {
    let d = evaluate_group_matrix(sm, values);
    let fb = FourierBlock::<T>::new(form.m);
    let (p, p_inv) = (fb.p(), fb.p_inverse());
    let (m, r) = (form.m, form.r);
    let n = m * r;
    let mut k = zeros(n, n);
    for bi in 0..r {
        for bj in 0..r {
            let sub: CMatrix<T> = (0..m)
                .map(|i| (0..m).map(|j| d[bi * m + i][bj * m + j]).collect())
                .collect();
            let conj = mat_mul(&mat_mul(&p_inv, &sub), p);
            for (i, row) in conj.iter().enumerate() {
                for (j, &x) in row.iter().enumerate() {
                    k[bi * m + i][bj * m + j] = x;
                }
            }
        }
    }
    let regrouped = conjugate_by_permutation(&k, &form.regroup);
    max_abs_diff(&regrouped, &form.assemble_block_diagonal())
}

/// The induced-representation image of the group element `g` in block `s`:
/// `B_{s+1}` evaluated at `x_g = 1`, `x_h = 0`.  Multiplicativity runs
/// forward, `ρ_s(g)·ρ_s(h) = ρ_s(gh)`, because the evaluated group matrix
/// is the left-regular permutation matrix of `g`.
pub fn induced_rep<T: Scalar>(sm: &SymbolicGroupMatrix, s: usize, g: usize) -> CMatrix<T> {
    let (m, r) = (sm.m(), sm.r());
    assert!(s < m, "block index out of range");
    let pos = sm.ordering.position_of(g);
    let mut out = zeros(r, r);
    for i in 1..=r {
        for j in 1..=r {
            if let Some(t) = sm.block_symbols(i, j).iter().position(|&w| w == pos) {
                out[i - 1][j - 1] = unit_root(m, (t * s) as i64);
            }
        }
    }
    out
}
