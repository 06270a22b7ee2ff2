//! Dense complex matrix helpers at the small sizes this crate needs:
//! products, conjugation, determinants by LU, and tolerance-based nullspaces.

use super::Scalar;
use num_complex::Complex;

/// Dense complex matrix in row-major nested vectors.
pub type CMatrix<T> = Vec<Vec<Complex<T>>>;

pub fn zeros<T: Scalar>(rows: usize, cols: usize) -> CMatrix<T> {
    vec![vec![Complex::new(T::zero(), T::zero()); cols]; rows]
}

pub fn identity<T: Scalar>(n: usize) -> CMatrix<T> {
    let mut out = zeros(n, n);
    for (i, row) in out.iter_mut().enumerate() {
        row[i] = Complex::new(T::one(), T::zero());
    }
    out
}

pub fn mat_mul<T: Scalar>(a: &CMatrix<T>, b: &CMatrix<T>) -> CMatrix<T> {
    let (rows, inner, cols) = (a.len(), b.len(), b[0].len());
    let mut out = zeros(rows, cols);
    for i in 0..rows {
        for (t, brow) in b.iter().enumerate().take(inner) {
            let f = a[i][t];
            for j in 0..cols {
                out[i][j] = out[i][j] + f * brow[j];
            }
        }
    }
    out
}

pub fn mat_sub<T: Scalar>(a: &CMatrix<T>, b: &CMatrix<T>) -> CMatrix<T> {
    a.iter()
        .zip(b)
        .map(|(ra, rb)| ra.iter().zip(rb).map(|(&x, &y)| x - y).collect())
        .collect()
}

pub fn scale<T: Scalar>(a: &CMatrix<T>, f: Complex<T>) -> CMatrix<T> {
    a.iter()
        .map(|row| row.iter().map(|&x| x * f).collect())
        .collect()
}

pub fn conj_transpose<T: Scalar>(a: &CMatrix<T>) -> CMatrix<T> {
    let (rows, cols) = (a.len(), a[0].len());
    let mut out = zeros(cols, rows);
    for (i, row) in a.iter().enumerate() {
        for (j, &x) in row.iter().enumerate() {
            out[j][i] = x.conj();
        }
    }
    out
}

pub fn max_abs<T: Scalar>(a: &CMatrix<T>) -> T {
    a.iter()
        .flatten()
        .fold(T::zero(), |acc, z| acc.max(z.norm()))
}

pub fn max_abs_diff<T: Scalar>(a: &CMatrix<T>, b: &CMatrix<T>) -> T {
    a.iter()
        .zip(b)
        .flat_map(|(ra, rb)| ra.iter().zip(rb).map(|(&x, &y)| (x - y).norm()))
        .fold(T::zero(), T::max)
}

pub fn trace<T: Scalar>(a: &CMatrix<T>) -> Complex<T> {
    a.iter()
        .enumerate()
        .fold(Complex::new(T::zero(), T::zero()), |acc, (i, row)| {
            acc + row[i]
        })
}

/// Determinant by LU elimination with partial pivoting on the modulus.
pub fn determinant<T: Scalar>(a: &CMatrix<T>) -> Complex<T> {
    let n = a.len();
    let mut m = a.clone();
    let mut det = Complex::new(T::one(), T::zero());
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| {
                m[i][col]
                    .norm_sqr()
                    .partial_cmp(&m[j][col].norm_sqr())
                    .unwrap()
            })
            .unwrap();
        if m[pivot][col].norm_sqr() == T::zero() {
            return Complex::new(T::zero(), T::zero());
        }
        if pivot != col {
            m.swap(pivot, col);
            det = -det;
        }
        let p = m[col][col];
        det = det * p;
        let lead: Vec<Complex<T>> = m[col][col..].to_vec();
        for mrow in m.iter_mut().skip(col + 1) {
            let f = mrow[col] / p;
            if f.norm_sqr() > T::zero() {
                for (x, &y) in mrow[col..].iter_mut().zip(&lead) {
                    *x = *x - f * y;
                }
            }
        }
    }
    det
}

/// Orthonormal basis of the nullspace of `a`, treating pivots below `tol`
/// as zero.  Vectors come out as columns (each a length-`cols` vector).
pub fn nullspace<T: Scalar>(a: &CMatrix<T>, tol: T) -> Vec<Vec<Complex<T>>> {
    let rows = a.len();
    let cols = a[0].len();
    let mut m = a.clone();
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut rank = 0;
    for col in 0..cols {
        let pivot = (rank..rows).max_by(|&i, &j| {
            m[i][col]
                .norm_sqr()
                .partial_cmp(&m[j][col].norm_sqr())
                .unwrap()
        });
        let pivot = match pivot {
            Some(p) if m[p][col].norm() > tol => p,
            _ => continue,
        };
        m.swap(rank, pivot);
        let p = m[rank][col];
        for x in m[rank][col..].iter_mut() {
            *x = *x / p;
        }
        let lead: Vec<Complex<T>> = m[rank][col..].to_vec();
        for (row, mrow) in m.iter_mut().enumerate() {
            if row != rank && mrow[col].norm_sqr() > T::zero() {
                let f = mrow[col];
                for (x, &y) in mrow[col..].iter_mut().zip(&lead) {
                    *x = *x - f * y;
                }
            }
        }
        pivots.push((rank, col));
        rank += 1;
        if rank == rows {
            break;
        }
    }
    let pivot_cols: Vec<usize> = pivots.iter().map(|&(_, c)| c).collect();
    let mut basis = Vec::new();
    for free in (0..cols).filter(|c| !pivot_cols.contains(c)) {
        let mut v = vec![Complex::new(T::zero(), T::zero()); cols];
        v[free] = Complex::new(T::one(), T::zero());
        for &(r, c) in &pivots {
            v[c] = -m[r][free];
        }
        basis.push(v);
    }
    orthonormalize(basis, tol)
}

pub fn inner_product<T: Scalar>(u: &[Complex<T>], v: &[Complex<T>]) -> Complex<T> {
    u.iter()
        .zip(v)
        .fold(Complex::new(T::zero(), T::zero()), |acc, (&x, &y)| {
            acc + x.conj() * y
        })
}

/// Modified Gram-Schmidt; vectors whose residual drops below `tol` are
/// discarded as dependent.
pub fn orthonormalize<T: Scalar>(
    vectors: Vec<Vec<Complex<T>>>,
    tol: T,
) -> Vec<Vec<Complex<T>>> {
    let mut out: Vec<Vec<Complex<T>>> = Vec::new();
    for mut v in vectors {
        for u in &out {
            let c = inner_product(u, &v);
            for (x, &y) in v.iter_mut().zip(u) {
                *x = *x - c * y;
            }
        }
        let norm = inner_product(&v, &v).re.sqrt();
        if norm > tol {
            for x in v.iter_mut() {
                *x = *x / Complex::new(norm, T::zero());
            }
            out.push(v);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    type C = Complex<f64>;

    fn c(re: f64, im: f64) -> C {
        Complex::new(re, im)
    }

    #[test]
    fn determinant_of_small_matrices() {
        let a = vec![vec![c(2.0, 0.0), c(1.0, 0.0)], vec![c(1.0, 0.0), c(1.0, 0.0)]];
        assert!((determinant(&a) - c(1.0, 0.0)).norm() < 1e-12);
        let rot = vec![vec![c(0.0, 1.0), c(0.0, 0.0)], vec![c(0.0, 0.0), c(0.0, -1.0)]];
        assert!((determinant(&rot) - c(1.0, 0.0)).norm() < 1e-12);
        let singular = vec![
            vec![c(1.0, 0.0), c(2.0, 0.0)],
            vec![c(2.0, 0.0), c(4.0, 0.0)],
        ];
        assert!(determinant(&singular).norm() < 1e-12);
    }

    #[test]
    fn nullspace_dimensions() {
        let a = vec![
            vec![c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)],
            vec![c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)],
        ];
        let ns = nullspace(&a, 1e-9);
        assert_eq!(ns.len(), 1);
        let v = &ns[0];
        assert!((v[0] + v[1]).norm() < 1e-12 && v[2].norm() < 1e-12);
        let full = identity::<f64>(3);
        assert!(nullspace(&full, 1e-9).is_empty());
        assert_eq!(nullspace(&zeros::<f64>(3, 3), 1e-9).len(), 3);
    }

    #[test]
    fn orthonormalization_discards_dependents() {
        let vs = vec![
            vec![c(3.0, 0.0), c(0.0, 0.0)],
            vec![c(6.0, 0.0), c(0.0, 0.0)],
            vec![c(1.0, 0.0), c(1.0, 0.0)],
        ];
        let basis = orthonormalize(vs, 1e-9);
        assert_eq!(basis.len(), 2);
        assert!((inner_product(&basis[0], &basis[0]).re - 1.0).abs() < 1e-12);
        assert!(inner_product(&basis[0], &basis[1]).norm() < 1e-12);
    }
}
