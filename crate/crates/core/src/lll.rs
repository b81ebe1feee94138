//! Integral LLL reduction (δ = 3/4) with exact Gram–Schmidt bookkeeping.
//!
//! Works on the integers `d_i = Π_{j≤i} ‖b*_j‖²` and `λ_{i,j} = d_j μ_{i,j}`
//! so that no rational arithmetic is needed, following Cohen's integral
//! variant of LLL. Input vectors must be linearly independent.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::matrix::{dot, IntegerMatrix};

/// Output of [`lll`]: reduced vectors and the unimodular transform.
#[derive(Debug, Clone)]
pub struct LllReduction {
    pub vectors: Vec<Vec<BigInt>>,
    /// `vectors[j] = Σ_i input[i] · transform[(i, j)]`.
    pub transform: IntegerMatrix,
    pub swaps: usize,
    /// `d[i] = Π_{j<i} ‖b*_j‖²` with `d[0] = 1`.
    pub d: Vec<BigInt>,
    /// `lambda[i][j] = d[j+1] · μ_{i,j}` for `j < i`.
    pub lambda: Vec<Vec<BigInt>>,
}

struct State {
    b: Vec<Vec<BigInt>>,
    h: Vec<Vec<BigInt>>,
    d: Vec<BigInt>,
    lambda: Vec<Vec<BigInt>>,
}

impl State {
    // Indices are 1-based for `d` (d[0] = 1) and 0-based for vectors.
    fn red(&mut self, k: usize, l: usize) {
        let dl = self.d[l + 1].clone();
        let lam = self.lambda[k][l].clone();
        if (&lam * 2u32).abs() <= dl {
            return;
        }
        let q = round_div(&lam, &dl);
        let (bl, hl) = (self.b[l].clone(), self.h[l].clone());
        for (x, y) in self.b[k].iter_mut().zip(&bl) {
            *x -= &q * y;
        }
        for (x, y) in self.h[k].iter_mut().zip(&hl) {
            *x -= &q * y;
        }
        self.lambda[k][l] -= &q * &dl;
        for i in 0..l {
            let t = &q * &self.lambda[l][i];
            self.lambda[k][i] -= t;
        }
    }

    fn swap(&mut self, k: usize, kmax: usize) {
        self.b.swap(k, k - 1);
        self.h.swap(k, k - 1);
        for j in 0..k - 1 {
            let t = self.lambda[k][j].clone();
            self.lambda[k][j] = self.lambda[k - 1][j].clone();
            self.lambda[k - 1][j] = t;
        }
        let lam = self.lambda[k][k - 1].clone();
        let dk = self.d[k + 1].clone();
        let dk1 = self.d[k].clone();
        let dk2 = self.d[k - 1].clone();
        let bnew = (&dk2 * &dk + &lam * &lam) / &dk1;
        for i in k + 1..=kmax {
            let t = self.lambda[i][k].clone();
            self.lambda[i][k] = (&dk * &self.lambda[i][k - 1] - &lam * &t) / &dk1;
            self.lambda[i][k - 1] = (&bnew * &t + &lam * &self.lambda[i][k]) / &dk;
        }
        self.d[k] = bnew;
    }
}

fn round_div(a: &BigInt, b: &BigInt) -> BigInt {
    // b > 0
    (a * 2u32 + b).div_floor(&(b * 2u32))
}

/// LLL-reduces a list of linearly independent integer vectors.
pub fn lll(vectors: &[Vec<BigInt>]) -> Result<LllReduction> {
    let k_len = vectors.len();
    if k_len == 0 {
        return Err(Error::Dimension("no vectors to reduce".into()));
    }
    let dim = vectors[0].len();
    if vectors.iter().any(|v| v.len() != dim) {
        return Err(Error::Dimension("vectors of unequal length".into()));
    }
    let mut st = State {
        b: vectors.to_vec(),
        h: (0..k_len)
            .map(|i| (0..k_len).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
            .collect(),
        d: alloc::vec![BigInt::zero(); k_len + 1],
        lambda: alloc::vec![alloc::vec![BigInt::zero(); k_len]; k_len],
    };
    st.d[0] = BigInt::one();
    st.d[1] = dot(&st.b[0], &st.b[0]);
    if st.d[1].is_zero() {
        return Err(Error::RankDeficient);
    }
    let mut swaps = 0usize;
    let mut k = 1usize;
    let mut kmax = 0usize;
    while k < k_len {
        if k > kmax {
            kmax = k;
            for j in 0..=k {
                let mut u = dot(&st.b[k], &st.b[j]);
                for i in 0..j {
                    u = (&st.d[i + 1] * &u - &st.lambda[k][i] * &st.lambda[j][i]) / &st.d[i];
                }
                if j < k {
                    st.lambda[k][j] = u;
                } else {
                    if u.is_zero() {
                        return Err(Error::RankDeficient);
                    }
                    st.d[k + 1] = u;
                }
            }
        }
        st.red(k, k - 1);
        let lam = &st.lambda[k][k - 1];
        let lhs = &st.d[k + 1] * &st.d[k - 1] * 4u32;
        let rhs = &st.d[k] * &st.d[k] * 3u32 - lam * lam * 4u32;
        if lhs < rhs {
            st.swap(k, kmax);
            swaps += 1;
            k = core::cmp::max(1, k - 1);
        } else {
            for l in (0..k - 1).rev() {
                st.red(k, l);
            }
            k += 1;
        }
    }
    let transform = IntegerMatrix::from_columns(&st.h)?;
    Ok(LllReduction { vectors: st.b, transform, swaps, d: st.d, lambda: st.lambda })
}

/// Checks size reduction `|μ_ij| ≤ 1/2` and the Lovász condition with δ = 3/4
/// from an exact Gram–Schmidt decomposition.
pub fn is_lll_reduced(vectors: &[Vec<BigInt>]) -> Result<bool> {
    let gso = crate::lattice::gram_schmidt_vectors(vectors)?;
    let half = BigRational::new(1.into(), 2.into());
    let delta = BigRational::new(3.into(), 4.into());
    let k = vectors.len();
    for i in 0..k {
        for j in 0..i {
            if gso.mu.get(i, j).abs() > half {
                return Ok(false);
            }
        }
        if i > 0 {
            let mu = gso.mu.get(i, i - 1);
            let bound = (&delta - mu * mu) * &gso.norms_sq[i - 1];
            if gso.norms_sq[i] < bound {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::norm_sq;
    use alloc::vec;

    fn iv(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn reduces_skewed_planar_basis() {
        // columns b1 = (1, 10), b2 = (0, 1)
        let out = lll(&[iv(&[1, 10]), iv(&[0, 1])]).unwrap();
        assert!(is_lll_reduced(&out.vectors).unwrap());
        for v in &out.vectors {
            assert_eq!(norm_sq(v), BigInt::one());
        }
        assert_eq!(out.transform.determinant().unwrap().abs(), BigInt::one());
    }

    #[test]
    fn transform_maps_input_to_output() {
        let input = vec![iv(&[3, 1, 4]), iv(&[1, 5, 9]), iv(&[2, 6, 5])];
        let out = lll(&input).unwrap();
        let inm = IntegerMatrix::from_columns(&input).unwrap();
        let outm = IntegerMatrix::from_columns(&out.vectors).unwrap();
        assert_eq!(inm.mul(&out.transform).unwrap(), outm);
        assert!(is_lll_reduced(&out.vectors).unwrap());
    }

    #[test]
    fn dependent_vectors_rejected() {
        assert_eq!(lll(&[iv(&[1, 2]), iv(&[2, 4])]).unwrap_err(), Error::RankDeficient);
    }

    #[test]
    fn rank_deficient_in_higher_ambient_space() {
        let r = lll(&[iv(&[1, 0, 1]), iv(&[0, 1, 1]), iv(&[1, 1, 2])]);
        assert_eq!(r.unwrap_err(), Error::RankDeficient);
    }
}
