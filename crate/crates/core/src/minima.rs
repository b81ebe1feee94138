//! Successive minima by exhaustive enumeration at desk scale.

use alloc::format;
use alloc::vec::Vec;
use core::ops::ControlFlow;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::enumerate::{combine, inflate, EnumStatus, Enumerator};
use crate::error::{Error, Result};
use crate::lattice::{scaled_dual_columns, LatticeBasis};
use crate::lll::lll;
use crate::matrix::{big_to_f64, norm_sq, RankAccumulator};

/// Largest dimension for which minima are computed exactly.
pub const ENUMERATION_CEILING: usize = 8;

const POINT_BUDGET: u64 = 50_000_000;

/// `λ_1² ≤ … ≤ λ_k²` with one witness vector per minimum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuccessiveMinima {
    /// Squared minima; exact when `exact` is set, otherwise certified upper
    /// bounds taken from LLL-reduced basis vectors.
    pub squared: Vec<BigInt>,
    pub witnesses: Vec<Vec<BigInt>>,
    pub exact: bool,
}

impl SuccessiveMinima {
    pub fn lambda(&self, i: usize) -> f64 {
        libm::sqrt(big_to_f64(&self.squared[i]))
    }

    pub fn last_squared(&self) -> &BigInt {
        self.squared.last().expect("at least one minimum")
    }
}

/// First `k` successive minima of the lattice.
///
/// Above [`ENUMERATION_CEILING`] the result is flagged inexact and carries the
/// sorted LLL vector norms, each an upper bound on the corresponding minimum.
pub fn successive_minima(basis: &LatticeBasis, k: usize) -> Result<SuccessiveMinima> {
    let cols = basis.columns();
    if basis.dim() > ENUMERATION_CEILING {
        return lll_upper_bounds(&cols, k);
    }
    minima_of_vectors(&cols, k)
}

/// Like [`successive_minima`] but refuses to approximate.
pub fn exact_successive_minima(basis: &LatticeBasis, k: usize) -> Result<SuccessiveMinima> {
    if basis.dim() > ENUMERATION_CEILING {
        return Err(Error::Capability(format!(
            "exact minima limited to n ≤ {ENUMERATION_CEILING}, got n = {}",
            basis.dim()
        )));
    }
    minima_of_vectors(&basis.columns(), k)
}

fn lll_upper_bounds(cols: &[Vec<BigInt>], k: usize) -> Result<SuccessiveMinima> {
    let red = lll(cols)?;
    let mut v = red.vectors;
    v.sort_by_key(|a| norm_sq(a));
    v.truncate(k);
    Ok(SuccessiveMinima { squared: v.iter().map(|x| norm_sq(x)).collect(), witnesses: v, exact: false })
}

/// Exact minima of the lattice spanned by independent integer `vectors`.
///
/// Ties are broken by taking the lexicographically smallest witness.
pub fn minima_of_vectors(vectors: &[Vec<BigInt>], k: usize) -> Result<SuccessiveMinima> {
    let rank = vectors.len();
    if k == 0 || k > rank {
        return Err(Error::Domain(format!("requested {k} minima of a rank-{rank} lattice")));
    }
    let red = lll(vectors)?;
    let mut norms: Vec<BigInt> = red.vectors.iter().map(|v| norm_sq(v)).collect();
    norms.sort();
    let radius_sq = norms[k - 1].clone();
    let en = Enumerator::from_lll(&red);
    let mut points: Vec<(BigInt, Vec<BigInt>)> = Vec::new();
    let st = en.enumerate(None, inflate(big_to_f64(&radius_sq)), POINT_BUDGET, |x| {
        if x.iter().all(|&c| c == 0) {
            return ControlFlow::Continue(());
        }
        let v = combine(&red.vectors, x);
        let nn = norm_sq(&v);
        if nn <= radius_sq {
            points.push((nn, v));
        }
        ControlFlow::Continue(())
    });
    if st.status != EnumStatus::Complete {
        return Err(Error::Capability("minima enumeration exceeded its point budget".into()));
    }
    points.sort();
    let dim = vectors[0].len();
    let mut acc = RankAccumulator::new(dim);
    let mut squared = Vec::with_capacity(k);
    let mut witnesses = Vec::with_capacity(k);
    for (nn, v) in points {
        if acc.insert(&v) {
            squared.push(nn);
            witnesses.push(v);
            if squared.len() == k {
                break;
            }
        }
    }
    if squared.len() < k {
        return Err(Error::Internal("enumeration radius did not cover k independent vectors".into()));
    }
    Ok(SuccessiveMinima { squared, witnesses, exact: true })
}

/// Exact `λ_1(ℒ*)²` as a rational, with a shortest dual vector scaled by `|det B|`.
pub fn dual_first_minimum(basis: &LatticeBasis) -> Result<(BigRational, Vec<BigInt>, BigInt)> {
    let (cols, scale) = scaled_dual_columns(basis);
    let m = minima_of_vectors(&cols, 1)?;
    let sq = BigRational::new(m.squared[0].clone(), &scale * &scale);
    Ok((sq, m.witnesses[0].clone(), scale))
}

/// Checks `1 ≤ λ_n(ℒ)·λ_1(ℒ*) ≤ n` exactly on squares.
pub fn transference_holds(lambda_n_sq: &BigInt, dual_lambda1_sq: &BigRational, n: usize) -> bool {
    let prod = BigRational::from_integer(lambda_n_sq.clone()) * dual_lambda1_sq;
    let one = BigRational::from_integer(BigInt::from(1));
    let n_sq = BigRational::from_integer(BigInt::from((n * n) as u64));
    !prod.is_zero() && prod >= one && prod <= n_sq
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn integer_lattice_minima_are_one() {
        let m = successive_minima(&LatticeBasis::identity(4), 4).unwrap();
        assert!(m.exact);
        assert!(m.squared.iter().all(|s| *s == BigInt::from(1)));
    }

    #[test]
    fn diagonal_minima() {
        let b = LatticeBasis::from_i64(2, &[1, 0, 0, 3]).unwrap();
        let m = successive_minima(&b, 2).unwrap();
        assert_eq!(m.squared, vec![BigInt::from(1), BigInt::from(9)]);
    }

    #[test]
    fn lexicographic_tie_break() {
        let m = successive_minima(&LatticeBasis::identity(2), 2).unwrap();
        assert_eq!(m.witnesses[0], vec![BigInt::from(-1), BigInt::from(0)]);
        assert_eq!(m.witnesses[1], vec![BigInt::from(0), BigInt::from(-1)]);
    }

    #[test]
    fn above_ceiling_is_flagged() {
        let b = LatticeBasis::identity(9);
        let m = successive_minima(&b, 9).unwrap();
        assert!(!m.exact);
        assert!(matches!(exact_successive_minima(&b, 9), Err(Error::Capability(_))));
    }

    #[test]
    fn dual_minimum_of_scaled_lattice() {
        let b = LatticeBasis::from_i64(2, &[2, 0, 0, 2]).unwrap();
        let (sq, _, _) = dual_first_minimum(&b).unwrap();
        assert_eq!(sq, BigRational::new(1.into(), 4.into()));
        assert!(transference_holds(&BigInt::from(4), &sq, 2));
    }
}
