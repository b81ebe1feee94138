//! Fincke–Pohst enumeration of lattice points in a ball.
//!
//! The search runs on a floating-point copy of the Gram–Schmidt data; callers
//! pass a slightly inflated radius and re-check candidates exactly.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::ControlFlow;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::Result;
use crate::lattice::gram_schmidt_vectors;
use crate::lll::LllReduction;
use crate::matrix::to_f64;

/// How an enumeration run ended.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EnumStatus {
    /// Every point in the ball was visited.
    Complete,
    /// The visitor asked to stop.
    Stopped,
    /// The node budget ran out before the ball was covered.
    BudgetExceeded,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumStats {
    pub status: EnumStatus,
    pub nodes: u64,
}

/// Relative and absolute slack added to enumeration radii before exact checks.
pub const RADIUS_SLACK: f64 = 1e-9;

pub fn inflate(radius_sq: f64) -> f64 {
    radius_sq * (1.0 + RADIUS_SLACK) + RADIUS_SLACK
}

#[derive(Debug, Clone)]
pub struct Enumerator {
    mu: Vec<Vec<f64>>,
    bstar_sq: Vec<f64>,
}

impl Enumerator {
    /// Builds the search structure for independent `vectors` (any ambient
    /// dimension) from their exact Gram–Schmidt decomposition.
    pub fn new(vectors: &[Vec<BigInt>]) -> Result<Self> {
        let g = gram_schmidt_vectors(vectors)?;
        let k = vectors.len();
        let mu = (0..k).map(|i| (0..k).map(|j| to_f64(g.mu.get(i, j))).collect()).collect();
        let bstar_sq = g.norms_sq.iter().map(to_f64).collect();
        Ok(Self { mu, bstar_sq })
    }

    /// Reuses the integral Gram–Schmidt data produced by LLL.
    pub fn from_lll(red: &LllReduction) -> Self {
        let k = red.vectors.len();
        let ratio = |a: &BigInt, b: &BigInt| to_f64(&BigRational::new(a.clone(), b.clone()));
        let mut mu = vec![vec![0.0; k]; k];
        for (i, row) in mu.iter_mut().enumerate() {
            row[i] = 1.0;
            for (j, m) in row.iter_mut().enumerate().take(i) {
                *m = ratio(&red.lambda[i][j], &red.d[j + 1]);
            }
        }
        let bstar_sq = (0..k).map(|i| ratio(&red.d[i + 1], &red.d[i])).collect();
        Self { mu, bstar_sq }
    }

    pub fn rank(&self) -> usize {
        self.bstar_sq.len()
    }

    pub fn bstar_sq(&self) -> &[f64] {
        &self.bstar_sq
    }

    /// Visits every integer coefficient vector `x` with `‖B(x − c)‖² ≤ radius_sq`
    /// (up to floating-point accuracy), where `c` is `center` or the origin.
    ///
    /// Points are produced in lexicographic order of `(x_{k-1}, …, x_0)`.
    pub fn enumerate<F>(
        &self,
        center: Option<&[f64]>,
        radius_sq: f64,
        node_budget: u64,
        mut visit: F,
    ) -> EnumStats
    where
        F: FnMut(&[i64]) -> ControlFlow<()>,
    {
        let k = self.rank();
        let zero = vec![0.0; k];
        let c = center.unwrap_or(&zero);
        assert_eq!(c.len(), k, "center has wrong length");
        let mut x = vec![0i64; k];
        let mut nodes = 0u64;
        let status = self.descend(k, c, radius_sq, &mut x, &mut nodes, node_budget, &mut visit);
        EnumStats { status, nodes }
    }

    #[allow(clippy::too_many_arguments)]
    fn descend<F>(
        &self,
        level: usize,
        c: &[f64],
        remaining: f64,
        x: &mut [i64],
        nodes: &mut u64,
        budget: u64,
        visit: &mut F,
    ) -> EnumStatus
    where
        F: FnMut(&[i64]) -> ControlFlow<()>,
    {
        if level == 0 {
            return match visit(x) {
                ControlFlow::Continue(()) => EnumStatus::Complete,
                ControlFlow::Break(()) => EnumStatus::Stopped,
            };
        }
        let l = level - 1;
        let k = self.rank();
        let mut centre = c[l];
        for i in level..k {
            centre -= self.mu[i][l] * (x[i] as f64 - c[i]);
        }
        let bs = self.bstar_sq[l];
        if remaining < 0.0 {
            return EnumStatus::Complete;
        }
        let half = libm::sqrt(remaining / bs);
        let lo = libm::ceil(centre - half);
        let hi = libm::floor(centre + half);
        if !(lo.is_finite() && hi.is_finite()) || hi - lo > 1e12 {
            return EnumStatus::BudgetExceeded;
        }
        let mut xi = lo as i64;
        let hi = hi as i64;
        while xi <= hi {
            *nodes += 1;
            if *nodes > budget {
                return EnumStatus::BudgetExceeded;
            }
            let diff = xi as f64 - centre;
            let rest = remaining - diff * diff * bs;
            if rest >= 0.0 {
                x[l] = xi;
                match self.descend(l, c, rest, x, nodes, budget, visit) {
                    EnumStatus::Complete => {}
                    other => return other,
                }
            }
            xi += 1;
        }
        x[l] = 0;
        EnumStatus::Complete
    }
}

/// `Σ x_i v_i` for integer coefficients.
pub fn combine(vectors: &[Vec<BigInt>], x: &[i64]) -> Vec<BigInt> {
    let dim = vectors.first().map_or(0, Vec::len);
    let mut out = vec![BigInt::from(0); dim];
    for (v, &c) in vectors.iter().zip(x) {
        if c == 0 {
            continue;
        }
        for (o, e) in out.iter_mut().zip(v) {
            *o += e * c;
        }
    }
    out
}
