//! Column-style Hermite normal form and integer kernel bases.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::matrix::IntegerMatrix;

/// `H = A·U` with `H` in column Hermite normal form and `U` unimodular.
#[derive(Debug, Clone)]
pub struct HermiteForm {
    pub h: IntegerMatrix,
    pub u: IntegerMatrix,
    pub rank: usize,
}

fn ext_gcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let e = a.extended_gcd(b);
    (e.gcd, e.x, e.y)
}

/// Column operations on `cols` (and the tracked transform `u`) to bring `A`
/// into lower-echelon form with positive pivots and reduced entries left of
/// each pivot.
pub fn hermite_normal_form(a: &IntegerMatrix) -> HermiteForm {
    let n = a.rows();
    let m = a.cols();
    let mut h: Vec<Vec<BigInt>> = a.columns();
    let mut u: Vec<Vec<BigInt>> = IntegerMatrix::identity(m).columns();
    let mut pivot_col = 0usize;
    for row in 0..n {
        if pivot_col == m {
            break;
        }
        for j in pivot_col + 1..m {
            if h[j][row].is_zero() {
                continue;
            }
            let x = h[pivot_col][row].clone();
            let y = h[j][row].clone();
            let (g, s, t) = ext_gcd(&x, &y);
            let (xg, yg) = (&x / &g, &y / &g);
            // [col_p, col_j] ← [s·col_p + t·col_j, −(y/g)·col_p + (x/g)·col_j], det = 1
            combine_pair(&mut h, pivot_col, j, &s, &t, &yg, &xg);
            combine_pair(&mut u, pivot_col, j, &s, &t, &yg, &xg);
        }
        if h[pivot_col][row].is_zero() {
            continue;
        }
        if h[pivot_col][row].is_negative() {
            negate(&mut h[pivot_col]);
            negate(&mut u[pivot_col]);
        }
        let p = h[pivot_col][row].clone();
        for j in 0..pivot_col {
            let q = h[j][row].div_floor(&p);
            if q.is_zero() {
                continue;
            }
            let (hp, up) = (h[pivot_col].clone(), u[pivot_col].clone());
            for (x, y) in h[j].iter_mut().zip(&hp) {
                *x -= &q * y;
            }
            for (x, y) in u[j].iter_mut().zip(&up) {
                *x -= &q * y;
            }
        }
        pivot_col += 1;
    }
    HermiteForm {
        h: IntegerMatrix::from_columns(&h).expect("shape preserved"),
        u: IntegerMatrix::from_columns(&u).expect("shape preserved"),
        rank: pivot_col,
    }
}

fn combine_pair(
    cols: &mut [Vec<BigInt>],
    p: usize,
    j: usize,
    s: &BigInt,
    t: &BigInt,
    yg: &BigInt,
    xg: &BigInt,
) {
    let cp = cols[p].clone();
    let cj = cols[j].clone();
    for (i, (a, b)) in cp.iter().zip(&cj).enumerate() {
        cols[p][i] = s * a + t * b;
        cols[j][i] = xg * b - yg * a;
    }
}

fn negate(v: &mut [BigInt]) {
    for x in v {
        *x = -core::mem::take(x);
    }
}

/// Basis (as columns of an `m × (m − rank A)` matrix) of `{z ∈ ℤ^m : A z = 0}`.
///
/// Returns `None` when the kernel is trivial. A zero matrix yields the
/// identity.
pub fn integer_kernel_basis(a: &IntegerMatrix) -> Option<IntegerMatrix> {
    let hnf = hermite_normal_form(a);
    let cols: Vec<Vec<BigInt>> = (hnf.rank..a.cols()).map(|j| hnf.u.column(j)).collect();
    if cols.is_empty() {
        return None;
    }
    Some(IntegerMatrix::from_columns(&cols).expect("non-empty kernel"))
}

/// Kernel basis for the SIS setting, where `m > n` guarantees a nontrivial kernel.
pub fn sis_kernel_basis(a: &IntegerMatrix) -> Result<IntegerMatrix> {
    if a.cols() <= a.rows() {
        return Err(Error::Precondition("kernel basis requires m > n".into()));
    }
    integer_kernel_basis(a).ok_or_else(|| Error::Internal("empty kernel with m > n".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    #[test]
    fn sum_zero_kernel() {
        let a = IntegerMatrix::from_i64(1, 3, &[1, 1, 1]).unwrap();
        let k = integer_kernel_basis(&a).unwrap();
        assert_eq!(k.cols(), 2);
        for c in k.columns() {
            assert!(c.iter().fold(BigInt::zero(), |s, x| s + x).is_zero());
        }
    }

    #[test]
    fn free_column_kernel() {
        let a = IntegerMatrix::from_i64(2, 3, &[1, 0, 0, 0, 1, 0]).unwrap();
        let k = integer_kernel_basis(&a).unwrap();
        assert_eq!(k.cols(), 1);
        let c = k.column(0);
        assert_eq!(c[0], BigInt::zero());
        assert_eq!(c[1], BigInt::zero());
        assert!(c[2].abs().is_one());
    }

    #[test]
    fn zero_matrix_kernel_is_identity() {
        let a = IntegerMatrix::zeros(2, 3);
        assert_eq!(integer_kernel_basis(&a).unwrap(), IntegerMatrix::identity(3));
    }

    #[test]
    fn hnf_transform_is_unimodular() {
        let a = IntegerMatrix::from_i64(2, 4, &[4, 6, 10, 3, 2, 7, 1, 5]).unwrap();
        let f = hermite_normal_form(&a);
        assert_eq!(a.mul(&f.u).unwrap(), f.h);
        assert!(f.u.determinant().unwrap().abs().is_one());
        assert_eq!(f.rank, 2);
        // lower echelon: row 0 has a single nonzero entry
        assert!(f.h.row(0).iter().skip(1).all(Zero::is_zero));
    }

    #[test]
    fn trivial_kernel() {
        let a = IntegerMatrix::identity(3);
        assert!(integer_kernel_basis(&a).is_none());
        assert!(sis_kernel_basis(&a).is_err());
    }
}
