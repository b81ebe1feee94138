//! Full-rank integer lattices given by a basis matrix whose columns are the
//! basis vectors.

use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;

use crate::error::{Error, Result};
use crate::lll;
use crate::matrix::{dot_q, norm_sq, rational_from_f64, to_f64, IntegerMatrix, RationalMatrix};

/// A square, full-rank integer basis with entries bounded by `M`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeBasis {
    matrix: IntegerMatrix,
    entry_bound: BigInt,
    determinant: BigInt,
    inverse: RationalMatrix,
}

impl LatticeBasis {
    /// Uses the exact entry bound of `matrix` as `M`.
    pub fn new(matrix: IntegerMatrix) -> Result<Self> {
        let bound = matrix.entry_bound();
        Self::with_entry_bound(matrix, bound)
    }

    pub fn with_entry_bound(matrix: IntegerMatrix, entry_bound: BigInt) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::Dimension(format!(
                "basis must be square, got {}x{}",
                matrix.rows(),
                matrix.cols()
            )));
        }
        let actual = matrix.entry_bound();
        if actual > entry_bound {
            return Err(Error::EntryBound(format!("entry {actual} exceeds M = {entry_bound}")));
        }
        let determinant = matrix.determinant()?;
        if determinant.is_zero() {
            return Err(Error::RankDeficient);
        }
        let inverse = matrix.to_rational().inverse()?;
        Ok(Self { matrix, entry_bound, determinant, inverse })
    }

    pub fn from_i64(n: usize, entries: &[i64]) -> Result<Self> {
        Self::new(IntegerMatrix::from_i64(n, n, entries)?)
    }

    pub fn identity(n: usize) -> Self {
        Self::new(IntegerMatrix::identity(n)).expect("identity is a basis")
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &IntegerMatrix {
        &self.matrix
    }

    pub fn entry_bound(&self) -> &BigInt {
        &self.entry_bound
    }

    pub fn determinant(&self) -> &BigInt {
        &self.determinant
    }

    /// Exact `B⁻¹`.
    pub fn inverse(&self) -> &RationalMatrix {
        &self.inverse
    }

    pub fn columns(&self) -> Vec<Vec<BigInt>> {
        self.matrix.columns()
    }

    /// `B · coeffs`.
    pub fn combine(&self, coeffs: &[BigInt]) -> Result<Vec<BigInt>> {
        self.matrix.mul_vec(coeffs)
    }

    /// Exact basis coordinates `B⁻¹ x` of a rational point.
    pub fn coordinates(&self, x: &[BigRational]) -> Result<Vec<BigRational>> {
        self.inverse.mul_vec(x)
    }

    /// Floating-point copy of `B`, row-major.
    pub fn to_f64(&self) -> Vec<f64> {
        self.matrix.entries().iter().map(crate::matrix::big_to_f64).collect()
    }

    /// Floating-point copy of `B⁻¹`, row-major.
    pub fn inverse_f64(&self) -> Vec<f64> {
        self.inverse.entries().iter().map(to_f64).collect()
    }
}

/// A lattice vector, optionally carrying its integer basis coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeVector {
    pub coords: Vec<BigInt>,
    pub coeffs: Option<Vec<BigInt>>,
}

impl LatticeVector {
    pub fn from_coeffs(basis: &LatticeBasis, coeffs: Vec<BigInt>) -> Result<Self> {
        let coords = basis.combine(&coeffs)?;
        Ok(Self { coords, coeffs: Some(coeffs) })
    }

    pub fn norm_sq(&self) -> BigInt {
        norm_sq(&self.coords)
    }

    pub fn norm(&self) -> f64 {
        libm::sqrt(crate::matrix::big_to_f64(&self.norm_sq()))
    }
}

/// Exact Gram–Schmidt data: `b*_i = b_i − Σ_{j<i} μ_{i,j} b*_j`.
#[derive(Debug, Clone)]
pub struct GramSchmidt {
    pub vectors: Vec<Vec<BigRational>>,
    /// Lower triangular with unit diagonal; `mu[(i, j)] = ⟨b_i, b*_j⟩ / ‖b*_j‖²`.
    pub mu: RationalMatrix,
    pub norms_sq: Vec<BigRational>,
}

pub fn gram_schmidt(basis: &LatticeBasis) -> Result<GramSchmidt> {
    gram_schmidt_vectors(&basis.columns())
}

/// Gram–Schmidt of an arbitrary list of independent integer vectors.
pub fn gram_schmidt_vectors(vectors: &[Vec<BigInt>]) -> Result<GramSchmidt> {
    let k = vectors.len();
    if k == 0 {
        return Err(Error::Dimension("no vectors".into()));
    }
    let mut mu = RationalMatrix::identity(k);
    let mut star: Vec<Vec<BigRational>> = Vec::with_capacity(k);
    let mut norms: Vec<BigRational> = Vec::with_capacity(k);
    for (i, b) in vectors.iter().enumerate() {
        let bq: Vec<BigRational> = b.iter().map(|x| BigRational::from_integer(x.clone())).collect();
        let mut s = bq.clone();
        for j in 0..i {
            let m = dot_q(&bq, &star[j]) / &norms[j];
            for (x, y) in s.iter_mut().zip(&star[j]) {
                *x -= &m * y;
            }
            mu.set(i, j, m);
        }
        let nn = dot_q(&s, &s);
        if nn.is_zero() {
            return Err(Error::RankDeficient);
        }
        star.push(s);
        norms.push(nn);
    }
    Ok(GramSchmidt { vectors: star, mu, norms_sq: norms })
}

/// LLL-reduces the basis (δ = 3/4). The result spans the same lattice.
pub fn lll_reduce(basis: &LatticeBasis) -> Result<LatticeBasis> {
    let out = lll::lll(&basis.columns())?;
    LatticeBasis::new(IntegerMatrix::from_columns(&out.vectors)?)
}

/// Integer coefficients `c` with `B c = v`, or `None` when `v ∉ ℒ`.
pub fn lattice_membership(basis: &LatticeBasis, v: &[BigInt]) -> Option<Vec<BigInt>> {
    if v.len() != basis.dim() {
        return None;
    }
    let vq: Vec<BigRational> = v.iter().map(|x| BigRational::from_integer(x.clone())).collect();
    let c = basis.coordinates(&vq).ok()?;
    c.iter().map(|x| x.is_integer().then(|| x.to_integer())).collect()
}

/// Result of reducing a point modulo the fundamental parallelepiped.
#[derive(Debug, Clone, PartialEq)]
pub struct ParallelepipedReduction {
    /// `y = B · frac(B⁻¹ x)`, exact.
    pub y: Vec<BigRational>,
    /// `frac(B⁻¹ x) ∈ [0, 1)ⁿ`, exact.
    pub fractional: Vec<BigRational>,
    /// `⌊B⁻¹ x⌋`; `y − x = −B · floor` is the lattice vector removed.
    pub floor: Vec<BigInt>,
}

impl ParallelepipedReduction {
    pub fn y_f64(&self) -> Vec<f64> {
        self.y.iter().map(to_f64).collect()
    }

    /// Integer coefficients of `y − x`.
    pub fn shift_coeffs(&self) -> Vec<BigInt> {
        self.floor.iter().map(|f| -f).collect()
    }
}

/// Reduces an exact rational point modulo `P(B)`.
pub fn reduce_mod_parallelepiped_exact(
    basis: &LatticeBasis,
    x: &[BigRational],
) -> Result<ParallelepipedReduction> {
    if x.len() != basis.dim() {
        return Err(Error::Dimension(format!("point of length {} in dimension {}", x.len(), basis.dim())));
    }
    let kappa = basis.coordinates(x)?;
    let floor: Vec<BigInt> = kappa.iter().map(|k| k.floor().to_integer()).collect();
    let fractional: Vec<BigRational> =
        kappa.iter().zip(&floor).map(|(k, f)| k - BigRational::from_integer(f.clone())).collect();
    let shift = basis.combine(&floor)?;
    let y = x.iter().zip(&shift).map(|(xi, s)| xi - BigRational::from_integer(s.clone())).collect();
    Ok(ParallelepipedReduction { y, fractional, floor })
}

/// Reduces a floating-point point modulo `P(B)`.
///
/// Every finite double is a dyadic rational, so the reduction is carried out
/// exactly on that rational and `y − x ∈ ℒ` holds without any snapping.
pub fn reduce_mod_parallelepiped(basis: &LatticeBasis, x: &[f64]) -> Result<ParallelepipedReduction> {
    let xq = x.iter().map(|&v| rational_from_f64(v)).collect::<Result<Vec<_>>>()?;
    reduce_mod_parallelepiped_exact(basis, &xq)
}

/// Exact dual basis `B^{-T}`; its columns generate `ℒ*`.
pub fn dual_basis(basis: &LatticeBasis) -> RationalMatrix {
    basis.inverse().transpose()
}

/// Integer basis of the scaled dual `|det B| · ℒ*` together with the scale.
pub fn scaled_dual_columns(basis: &LatticeBasis) -> (Vec<Vec<BigInt>>, BigInt) {
    let scale = basis.determinant().abs();
    let dual = dual_basis(basis).scale(&BigRational::from_integer(scale.clone()));
    let int = dual.to_integer().expect("det · B^{-T} is the adjugate transpose");
    (int.columns(), scale)
}

/// Uniformly random full-rank basis with entries in `[-M, M]`.
pub fn random_basis<R: Rng + ?Sized>(n: usize, m_bound: i64, rng: &mut R) -> Result<LatticeBasis> {
    if n == 0 || m_bound < 1 {
        return Err(Error::Domain(format!("random basis needs n ≥ 1 and M ≥ 1 (n={n}, M={m_bound})")));
    }
    loop {
        let entries: Vec<i64> = (0..n * n).map(|_| rng.random_range(-m_bound..=m_bound)).collect();
        let m = IntegerMatrix::from_i64(n, n, &entries)?;
        if !m.determinant()?.is_zero() {
            return LatticeBasis::with_entry_bound(m, BigInt::from(m_bound));
        }
    }
}

/// `max_i ‖b_i‖²` over the columns of a basis.
pub fn max_column_norm_sq(basis: &LatticeBasis) -> BigInt {
    basis.columns().iter().map(|c| norm_sq(c)).max().unwrap_or_default()
}

#[cfg(test)]
pub(crate) fn is_unimodular(m: &IntegerMatrix) -> bool {
    m.determinant().map(|d| d.abs().is_one()).unwrap_or(false)
}

pub(crate) fn frac_is_canonical(f: &BigRational) -> bool {
    !f.is_negative() && f < &BigRational::one()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lll::is_lll_reduced;
    use crate::matrix::dot_q;
    use alloc::vec;
    use rand::SeedableRng;
    use rand_chacha::ChaCha12Rng;

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn identity_gso_is_fixed_point() {
        let g = gram_schmidt(&LatticeBasis::identity(3)).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let e = if i == j { q(1, 1) } else { q(0, 1) };
                assert_eq!(g.vectors[i][j], e);
                assert_eq!(g.mu.get(i, j), &e);
            }
        }
    }

    #[test]
    fn gso_two_step_recurrence() {
        // columns b1 = (1, 0), b2 = (1, 1)
        let b = LatticeBasis::from_i64(2, &[1, 1, 0, 1]).unwrap();
        let g = gram_schmidt(&b).unwrap();
        assert_eq!(g.mu.get(1, 0), &q(1, 1));
        assert_eq!(g.vectors[1], vec![q(0, 1), q(1, 1)]);
        assert!(dot_q(&g.vectors[0], &g.vectors[1]).is_zero());

        // columns b1 = (1, 1), b2 = (0, 1): μ = 1/2
        let b = LatticeBasis::from_i64(2, &[1, 0, 1, 1]).unwrap();
        let g = gram_schmidt(&b).unwrap();
        assert_eq!(g.mu.get(1, 0), &q(1, 2));
        assert_eq!(g.vectors[1], vec![q(-1, 2), q(1, 2)]);
        assert!(dot_q(&g.vectors[0], &g.vectors[1]).is_zero());
    }

    #[test]
    fn singular_basis_rejected() {
        assert_eq!(LatticeBasis::from_i64(2, &[1, 2, 2, 4]).unwrap_err(), Error::RankDeficient);
        let r = gram_schmidt_vectors(&[vec![BigInt::from(1), BigInt::from(2)], vec![BigInt::from(2), BigInt::from(4)]]);
        assert_eq!(r.unwrap_err(), Error::RankDeficient);
    }

    #[test]
    fn entry_bound_enforced() {
        let m = IntegerMatrix::from_i64(2, 2, &[1, 6, 0, 1]).unwrap();
        assert!(matches!(LatticeBasis::with_entry_bound(m, BigInt::from(5)), Err(Error::EntryBound(_))));
    }

    #[test]
    fn lll_of_skewed_basis() {
        // columns b1 = (1, 10), b2 = (0, 1)
        let b = LatticeBasis::from_i64(2, &[1, 0, 10, 1]).unwrap();
        let r = lll_reduce(&b).unwrap();
        assert!(is_lll_reduced(&r.columns()).unwrap());
        assert_eq!(r.determinant().abs(), b.determinant().abs());
        // λ_2 = 1 for ℤ², bound 2^{1/2}·1 on squared norms: ‖b_j‖² ≤ 2
        assert!(max_column_norm_sq(&r) <= BigInt::from(2));
    }

    #[test]
    fn membership_cases() {
        let b = LatticeBasis::from_i64(3, &[2, 1, 0, 0, 3, 1, 1, 0, 4]).unwrap();
        assert_eq!(lattice_membership(&b, &[BigInt::zero(), BigInt::zero(), BigInt::zero()]), Some(vec![BigInt::zero(); 3]));
        let coeffs = vec![BigInt::from(1), BigInt::from(2), BigInt::from(0)];
        let v = b.combine(&coeffs).unwrap();
        assert_eq!(lattice_membership(&b, &v), Some(coeffs));

        let two = LatticeBasis::from_i64(2, &[2, 0, 0, 2]).unwrap();
        let v = vec![BigInt::from(3), BigInt::from(0)];
        assert_eq!(lattice_membership(&two, &v), None);
    }

    #[test]
    fn parallelepiped_reduction_examples() {
        let id = LatticeBasis::identity(2);
        let r = reduce_mod_parallelepiped(&id, &[2.5, -0.25]).unwrap();
        assert_eq!(r.y, vec![q(1, 2), q(3, 4)]);
        assert_eq!(r.floor, vec![BigInt::from(2), BigInt::from(-1)]);

        let b = LatticeBasis::from_i64(2, &[3, 1, -1, 2]).unwrap();
        let inside = b.to_f64();
        let x = [0.25 * inside[0] + 0.5 * inside[1], 0.25 * inside[2] + 0.5 * inside[3]];
        let r = reduce_mod_parallelepiped(&b, &x).unwrap();
        assert_eq!(r.y_f64(), x.to_vec());
        assert!(r.floor.iter().all(Zero::is_zero));
    }

    #[test]
    fn dual_examples() {
        let id = LatticeBasis::identity(3);
        assert_eq!(dual_basis(&id), RationalMatrix::identity(3));
        let two = LatticeBasis::from_i64(2, &[2, 0, 0, 2]).unwrap();
        assert_eq!(dual_basis(&two), RationalMatrix::identity(2).scale(&q(1, 2)));
    }

    #[test]
    fn random_basis_respects_bound() {
        let mut rng = ChaCha12Rng::seed_from_u64(7);
        for _ in 0..20 {
            let b = random_basis(4, 5, &mut rng).unwrap();
            assert!(b.matrix().entry_bound() <= BigInt::from(5));
            assert!(!b.determinant().is_zero());
        }
    }

    #[test]
    fn scaled_dual_is_integral() {
        let b = LatticeBasis::from_i64(2, &[2, 1, 0, 3]).unwrap();
        let (cols, scale) = scaled_dual_columns(&b);
        assert_eq!(scale, BigInt::from(6));
        let bm = b.matrix().columns();
        // ⟨b_i, scale·d_j⟩ = scale·δ_ij
        for (i, bi) in bm.iter().enumerate() {
            for (j, dj) in cols.iter().enumerate() {
                let e = if i == j { scale.clone() } else { BigInt::zero() };
                assert_eq!(crate::matrix::dot(bi, dj), e);
            }
        }
        assert!(is_unimodular(&IntegerMatrix::identity(2)));
        assert!(frac_is_canonical(&q(0, 1)) && !frac_is_canonical(&q(1, 1)));
    }
}
