//! Gaussians in the `ρ_σ(x) = exp(−π‖x/σ‖²)` convention, discrete Gaussians on
//! lattice cosets, and smoothing-parameter estimation.
//!
//! A continuous `D_σ` has per-coordinate standard deviation `σ/√(2π)`.
//! Tolerances `ε` are carried in log-space ([`Epsilon`]) because the
//! reduction's `ε = n^{−log₂ n}` is far below `f64` resolution for moderate `n`.

use alloc::format;
use alloc::vec::Vec;
use core::f64::consts::PI;
use core::ops::ControlFlow;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::enumerate::{inflate, EnumStatus, Enumerator};
use crate::error::{Error, Result};
use crate::lattice::{scaled_dual_columns, LatticeBasis};
use crate::lll::lll;
use crate::matrix::{big_to_f64, norm_sq, to_f64};
use crate::minima::successive_minima;

/// Default enumeration point budget for coset sampling and dual sums.
pub const POINT_BUDGET: u64 = 10_000_000;

/// Enumeration window for coset sampling, in standard deviations.
pub const TAIL_CUTOFF: f64 = 6.0;

#[derive(Debug, Clone, PartialEq)]
pub struct GaussianSpec {
    sigma: f64,
    center: Option<Vec<f64>>,
}

impl GaussianSpec {
    pub fn new(sigma: f64) -> Result<Self> {
        if !(sigma.is_finite() && sigma > 0.0) {
            return Err(Error::Domain(format!("Gaussian parameter must be positive, got {sigma}")));
        }
        Ok(Self { sigma, center: None })
    }

    pub fn with_center(mut self, center: Vec<f64>) -> Self {
        self.center = Some(center);
        self
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    /// `σ′ = σ/√(2π)`, the per-coordinate standard deviation.
    pub fn std_dev(&self) -> f64 {
        self.sigma / libm::sqrt(2.0 * PI)
    }

    pub fn center(&self) -> Option<&[f64]> {
        self.center.as_deref()
    }

    /// `ρ_{σ,c}(x)`.
    pub fn rho(&self, x: &[f64]) -> f64 {
        libm::exp(-PI * self.dist_sq(x) / (self.sigma * self.sigma))
    }

    fn dist_sq(&self, x: &[f64]) -> f64 {
        match &self.center {
            Some(c) => x.iter().zip(c).map(|(a, b)| (a - b) * (a - b)).sum(),
            None => x.iter().map(|a| a * a).sum(),
        }
    }
}

/// One draw from the continuous `D_{σ,c}` on `ℝ^dim`.
pub fn sample_continuous<R: Rng + ?Sized>(spec: &GaussianSpec, dim: usize, rng: &mut R) -> Vec<f64> {
    let sd = spec.std_dev();
    (0..dim)
        .map(|i| {
            let z: f64 = rng.sample(StandardNormal);
            spec.center.as_ref().map_or(0.0, |c| c[i]) + sd * z
        })
        .collect()
}

/// `S = Σ a_j x_j` and whether `‖S‖ ≤ √(2n)·σ·‖a‖₂`.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearCombination {
    pub sum: Vec<f64>,
    pub norm: f64,
    pub bound: f64,
    pub within_bound: bool,
}

pub fn linear_combination_bound_check(
    coeffs: &[i64],
    samples: &[Vec<f64>],
    sigma: f64,
) -> Result<LinearCombination> {
    if coeffs.len() != samples.len() || samples.is_empty() {
        return Err(Error::Dimension(format!(
            "{} coefficients for {} samples",
            coeffs.len(),
            samples.len()
        )));
    }
    let n = samples[0].len();
    let mut sum = alloc::vec![0.0; n];
    for (&a, x) in coeffs.iter().zip(samples) {
        if x.len() != n {
            return Err(Error::Dimension("samples of unequal dimension".into()));
        }
        for (s, v) in sum.iter_mut().zip(x) {
            *s += a as f64 * v;
        }
    }
    let norm = libm::sqrt(sum.iter().map(|v| v * v).sum());
    let a_norm = libm::sqrt(coeffs.iter().map(|&a| (a * a) as f64).sum());
    let bound = libm::sqrt(2.0 * n as f64) * sigma * a_norm;
    Ok(LinearCombination { sum, norm, bound, within_bound: norm <= bound })
}

/// Upper bound on `Σ_{p ∈ S, ‖p − c‖ > radius} exp(−a‖p − c‖²)` for any point
/// set `S ⊂ ℝⁿ` whose points are pairwise at least `separation` apart.
///
/// Uses the packing count `#{p : ‖p − c‖ ≤ r} ≤ (2r/separation + 1)ⁿ` on
/// shells of width `separation`; the shell terms have decreasing ratios, so
/// once a ratio drops below 1/2 the rest is bounded by a geometric series.
pub fn separated_tail_bound(n: usize, separation: f64, a: f64, radius: f64) -> f64 {
    if !(separation > 0.0 && a > 0.0) {
        return f64::INFINITY;
    }
    let h = separation;
    let ln_term = |k: f64| {
        let r_in = radius.max(0.0) + k * h;
        let r_out = r_in + h;
        n as f64 * libm::log(2.0 * r_out / separation + 1.0) - a * r_in * r_in
    };
    let mut total = 0.0;
    let mut k = 0.0;
    while k < 1e7 {
        let t = libm::exp(ln_term(k));
        let next = libm::exp(ln_term(k + 1.0));
        total += t;
        if next <= 0.5 * t {
            return total + 2.0 * next;
        }
        k += 1.0;
    }
    f64::INFINITY
}

/// A draw from `D_{ℒ+y,σ,c}` with its lattice certificate.
#[derive(Debug, Clone, PartialEq)]
pub struct CosetSample {
    /// Exact point `x = y + B·coeffs`.
    pub point: Vec<BigRational>,
    pub point_f64: Vec<f64>,
    /// Integer coefficients of `x − y` in the input basis.
    pub coeffs: Vec<BigInt>,
    pub candidates: usize,
    /// Bound on the omitted Gaussian mass relative to the enumerated mass.
    pub truncation_bound: f64,
}

/// Exact-by-enumeration sampler for discrete Gaussians on cosets `ℒ + y`.
#[derive(Debug, Clone)]
pub struct CosetSampler {
    n: usize,
    reduced: Vec<Vec<f64>>,
    reduced_exact: Vec<Vec<BigInt>>,
    reduced_inverse: Vec<f64>,
    transform: Vec<i64>,
    enumerator: Enumerator,
    separation: f64,
    point_budget: u64,
}

impl CosetSampler {
    pub fn new(basis: &LatticeBasis) -> Result<Self> {
        let red = lll(&basis.columns())?;
        let n = basis.dim();
        let enumerator = Enumerator::from_lll(&red);
        let separation = libm::sqrt(enumerator.bstar_sq().iter().cloned().fold(f64::INFINITY, f64::min));
        let rb = LatticeBasis::new(crate::matrix::IntegerMatrix::from_columns(&red.vectors)?)?;
        let transform = red
            .transform
            .to_i64()
            .ok_or_else(|| Error::Capability("LLL transform does not fit in i64".into()))?;
        Ok(Self {
            n,
            reduced: red.vectors.iter().map(|v| v.iter().map(big_to_f64).collect()).collect(),
            reduced_exact: red.vectors.clone(),
            reduced_inverse: rb.inverse_f64(),
            transform,
            enumerator,
            separation,
            point_budget: POINT_BUDGET,
        })
    }

    pub fn with_point_budget(mut self, budget: u64) -> Self {
        self.point_budget = budget;
        self
    }

    /// Reduced-basis coefficients `k` with `‖B'k − target‖ ≤ radius`, and the
    /// squared distances.
    fn window(&self, t: &[f64], target: &[f64], radius: f64) -> Result<Vec<(Vec<i64>, f64)>> {
        let n = self.n;
        let mut pts = Vec::new();
        let st = self.enumerator.enumerate(Some(t), inflate(radius * radius), self.point_budget, |k| {
            let mut d2 = 0.0;
            for r in 0..n {
                let p: f64 = (0..n).map(|j| self.reduced[j][r] * k[j] as f64).sum::<f64>() - target[r];
                d2 += p * p;
            }
            pts.push((k.to_vec(), d2));
            ControlFlow::Continue(())
        });
        if st.status == EnumStatus::BudgetExceeded {
            return Err(Error::Capability(format!(
                "coset enumeration exceeded {} points; reduce n or σ",
                self.point_budget
            )));
        }
        Ok(pts)
    }

    pub fn sample<R: Rng + ?Sized>(
        &self,
        shift: &[BigRational],
        spec: &GaussianSpec,
        rng: &mut R,
    ) -> Result<CosetSample> {
        let n = self.n;
        if shift.len() != n {
            return Err(Error::Dimension(format!("shift of length {} in dimension {n}", shift.len())));
        }
        let y: Vec<f64> = shift.iter().map(to_f64).collect();
        let c: Vec<f64> = spec.center().map_or_else(|| alloc::vec![0.0; n], <[f64]>::to_vec);
        // lattice points B'k with ‖B'k − (c − y)‖ ≤ R
        let target: Vec<f64> = c.iter().zip(&y).map(|(a, b)| a - b).collect();
        let t: Vec<f64> = (0..n)
            .map(|i| (0..n).map(|j| self.reduced_inverse[i * n + j] * target[j]).sum())
            .collect();
        let base = TAIL_CUTOFF * spec.std_dev() * libm::sqrt(n as f64);
        let s2 = spec.sigma() * spec.sigma();
        // A narrow Gaussian may have no coset point within `base`; widen until
        // the window holds the nearest point plus the usual tail margin.
        let mut radius = base;
        let (pts, dmin2) = loop {
            let pts = self.window(&t, &target, radius)?;
            match pts.iter().map(|p| p.1).reduce(f64::min) {
                Some(d) if radius > base && libm::sqrt(d) + base > radius => radius = libm::sqrt(d) + base,
                Some(d) => break (pts, d),
                None => radius *= 2.0,
            }
        };
        // weights relative to the nearest point, so they cannot all underflow
        let mut total = 0.0;
        let pts: Vec<(Vec<i64>, f64)> = pts
            .into_iter()
            .map(|(k, d2)| {
                total += libm::exp(-PI * (d2 - dmin2) / s2);
                (k, total)
            })
            .collect();
        let u: f64 = rng.random::<f64>() * total;
        let idx = pts.partition_point(|(_, cum)| *cum <= u).min(pts.len() - 1);
        let kred = &pts[idx].0;
        let coeffs: Vec<BigInt> = (0..n)
            .map(|i| BigInt::from((0..n).map(|j| self.transform[i * n + j] * kred[j]).sum::<i64>()))
            .collect();
        let tail = separated_tail_bound(n, self.separation, PI / s2, radius);
        let truncation_bound = libm::exp(libm::log(tail) + PI * dmin2 / s2 - libm::log(total));
        let offset = crate::enumerate::combine(&self.reduced_exact, kred);
        let point: Vec<BigRational> =
            shift.iter().zip(offset).map(|(y, o)| y + BigRational::from_integer(o)).collect();
        let point_f64 = point.iter().map(to_f64).collect();
        Ok(CosetSample { point, point_f64, coeffs, candidates: pts.len(), truncation_bound })
    }
}

/// One draw from `D_{ℒ+y,σ,c}`.
pub fn sample_coset_discrete<R: Rng + ?Sized>(
    basis: &LatticeBasis,
    shift: &[BigRational],
    spec: &GaussianSpec,
    rng: &mut R,
) -> Result<CosetSample> {
    CosetSampler::new(basis)?.sample(shift, spec, rng)
}

/// `ρ_{1/s}(ℒ* \ {0})` split into the enumerated part and a tail bound:
/// `mass ≤ true value ≤ mass + truncation_bound`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DualMass {
    pub mass: f64,
    pub truncation_bound: f64,
}

impl DualMass {
    pub fn upper(&self) -> f64 {
        self.mass + self.truncation_bound
    }
}

/// Squared norms of all nonzero dual vectors within a cutoff radius.
#[derive(Debug, Clone)]
pub struct DualMassTable {
    n: usize,
    cutoff: f64,
    norms_sq: Vec<f64>,
    separation: f64,
    dual_lambda1: f64,
}

impl DualMassTable {
    pub fn build(basis: &LatticeBasis, cutoff: f64, point_budget: u64) -> Result<Self> {
        if !(cutoff.is_finite() && cutoff > 0.0) {
            return Err(Error::Domain(format!("cutoff must be positive, got {cutoff}")));
        }
        let (cols, scale) = scaled_dual_columns(basis);
        let scale_f = big_to_f64(&scale);
        let red = lll(&cols)?;
        let en = Enumerator::from_lll(&red);
        let gso_min = libm::sqrt(en.bstar_sq().iter().cloned().fold(f64::INFINITY, f64::min)) / scale_f;
        let r_scaled = cutoff * scale_f;
        let mut norms_sq = Vec::new();
        let st = en.enumerate(None, inflate(r_scaled * r_scaled), point_budget, |x| {
            if x.iter().any(|&c| c != 0) {
                let v = crate::enumerate::combine(&red.vectors, x);
                let nn = to_f64(&BigRational::new(norm_sq(&v), &scale * &scale));
                norms_sq.push(nn);
            }
            ControlFlow::Continue(())
        });
        if st.status != EnumStatus::Complete {
            return Err(Error::Capability(format!("dual enumeration exceeded {point_budget} points")));
        }
        norms_sq.sort_by(f64::total_cmp);
        let dual_lambda1 = norms_sq.first().map_or(gso_min, |&s| libm::sqrt(s));
        Ok(Self { n: basis.dim(), cutoff, norms_sq, separation: gso_min.min(dual_lambda1), dual_lambda1 })
    }

    pub fn cutoff(&self) -> f64 {
        self.cutoff
    }

    pub fn len(&self) -> usize {
        self.norms_sq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.norms_sq.is_empty()
    }

    /// `λ_1(ℒ*)` when the cutoff reaches it, otherwise a Gram–Schmidt lower bound.
    pub fn dual_lambda1(&self) -> f64 {
        self.dual_lambda1
    }

    pub fn mass(&self, s: f64) -> DualMass {
        let a = PI * s * s;
        let mass = self.norms_sq.iter().rev().map(|&q| libm::exp(-a * q)).sum();
        let truncation_bound = separated_tail_bound(self.n, self.separation, a, self.cutoff);
        DualMass { mass, truncation_bound }
    }
}

/// `ρ_{1/s}(ℒ* \ {0})` by enumeration of dual points with norm ≤ `cutoff`.
pub fn dual_gaussian_mass(basis: &LatticeBasis, s: f64, cutoff: f64) -> Result<DualMass> {
    if !(s.is_finite() && s > 0.0) {
        return Err(Error::Domain(format!("Gaussian parameter must be positive, got {s}")));
    }
    Ok(DualMassTable::build(basis, cutoff, POINT_BUDGET)?.mass(s))
}

/// A tolerance `ε > 0` stored as `ln ε`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Epsilon {
    ln: f64,
}

impl Epsilon {
    pub fn new(eps: f64) -> Result<Self> {
        if !(eps.is_finite() && eps > 0.0) {
            return Err(Error::Domain(format!("ε must be positive, got {eps}")));
        }
        Ok(Self { ln: libm::log(eps) })
    }

    pub fn from_ln(ln: f64) -> Self {
        Self { ln }
    }

    /// `ε = n^{−log₂ n}`.
    pub fn reduction_default(n: usize) -> Self {
        let nf = n as f64;
        Self { ln: -libm::log2(nf) * libm::log(nf) }
    }

    pub fn ln(&self) -> f64 {
        self.ln
    }

    /// `ε` itself; underflows to 0 for very small tolerances.
    pub fn value(&self) -> f64 {
        libm::exp(self.ln)
    }

    /// `ln(1 + 1/ε)` without overflow.
    pub fn ln_one_plus_inverse(&self) -> f64 {
        if self.ln < -30.0 {
            -self.ln + libm::log1p(libm::exp(self.ln))
        } else {
            libm::log1p(libm::exp(-self.ln))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SmoothingMethod {
    AnalyticBound,
    TruncatedSumBisection,
}

/// Certified bracket `lower < η_ε(ℒ) ≤ upper`.
#[derive(Debug, Clone, PartialEq)]
pub struct SmoothingEstimate {
    pub eps: Epsilon,
    pub lower: f64,
    pub upper: f64,
    pub method: SmoothingMethod,
    /// Brackets from the closed-form bounds in `λ_n` (and `λ_1(ℒ*)`).
    pub analytic_lower: f64,
    pub analytic_upper: f64,
    pub lambda_n: f64,
    pub dual_lambda1: f64,
}

impl SmoothingEstimate {
    /// Point estimate: the bracket midpoint.
    pub fn value(&self) -> f64 {
        0.5 * (self.lower + self.upper)
    }
}

/// Closed-form brackets on `η_ε`.
///
/// Upper: `√(ln(2n(1+1/ε)))·λ_n`, tightened to `2λ_n log₂ n` when
/// `ε ≤ n^{−log₂ n}` and `n ≥ 2`. Lower: `λ_n/n` for `ε < 1/100`, and the
/// single-dual-vector bound `√(ln(2/ε)/π)/λ_1(ℒ*)` (a shortest dual vector
/// and its negative already carry mass `2·exp(−π s² λ_1(ℒ*)²)`).
pub fn analytic_smoothing_bounds(n: usize, lambda_n: f64, dual_lambda1: f64, eps: Epsilon) -> (f64, f64) {
    let nf = n as f64;
    let mut upper = libm::sqrt(libm::log(2.0 * nf) + eps.ln_one_plus_inverse()) * lambda_n;
    if n >= 2 && eps.ln <= Epsilon::reduction_default(n).ln {
        upper = upper.min(2.0 * lambda_n * libm::log2(nf));
    }
    let mut lower = 0.0f64;
    if eps.ln < libm::log(0.01) {
        lower = lambda_n / nf;
    }
    if dual_lambda1 > 0.0 && eps.ln < libm::log(2.0) {
        let w = libm::sqrt((libm::log(2.0) - eps.ln) / PI) / dual_lambda1;
        lower = lower.max(w);
    }
    (lower, upper)
}

/// Analytic brackets only.
pub fn smoothing_estimate_analytic(basis: &LatticeBasis, eps: Epsilon) -> Result<SmoothingEstimate> {
    let n = basis.dim();
    let minima = successive_minima(basis, n)?;
    let lambda_n = minima.lambda(n - 1);
    let (sq, _, _) = crate::minima::dual_first_minimum(basis)?;
    let dual_lambda1 = libm::sqrt(to_f64(&sq));
    let (lo, hi) = analytic_smoothing_bounds(n, lambda_n, dual_lambda1, eps);
    Ok(SmoothingEstimate {
        eps,
        lower: lo,
        upper: hi,
        method: SmoothingMethod::AnalyticBound,
        analytic_lower: lo,
        analytic_upper: hi,
        lambda_n,
        dual_lambda1,
    })
}

/// Brackets `η_ε` by bisection on the truncated dual sum until the relative
/// width is at most `rel_width`.
///
/// The numerical bracket is certified from the dual sum alone: `lower` has
/// enumerated mass above `ε`, `upper` has mass plus tail bound at most `ε`.
pub fn smoothing_estimate_with(basis: &LatticeBasis, eps: Epsilon, rel_width: f64) -> Result<SmoothingEstimate> {
    let analytic = smoothing_estimate_analytic(basis, eps)?;
    let e = eps.value();
    if !(e > 0.0) {
        return Err(Error::Capability("ε underflows f64; only analytic brackets available".into()));
    }
    let l1 = analytic.dual_lambda1;
    let mut cutoff = 3.0 * l1;
    let mut table = DualMassTable::build(basis, cutoff, POINT_BUDGET)?;
    let mut lo = 0.25 / l1;
    while table.mass(lo).mass <= e {
        lo *= 0.5;
        if lo < 1e-12 / l1 {
            return Err(Error::Internal("dual mass never exceeds ε".into()));
        }
    }
    let mut hi = 1.0 / l1;
    let mut guard = 0;
    loop {
        let m = table.mass(hi);
        if m.upper() <= e {
            break;
        }
        // grow the window when the tail dominates, otherwise move right
        if m.truncation_bound > 0.01 * e {
            cutoff *= 1.5;
            table = DualMassTable::build(basis, cutoff, POINT_BUDGET)?;
        } else {
            hi *= 2.0;
        }
        guard += 1;
        if guard > 200 {
            return Err(Error::Capability("could not certify an upper bracket".into()));
        }
    }
    while (hi - lo) > rel_width * hi {
        let mid = 0.5 * (lo + hi);
        let m = table.mass(mid);
        if m.upper() <= e {
            hi = mid;
        } else if m.mass > e {
            lo = mid;
        } else {
            cutoff *= 1.5;
            table = DualMassTable::build(basis, cutoff, POINT_BUDGET)?;
            guard += 1;
            if guard > 200 {
                return Err(Error::Capability("truncation bound too loose to bisect".into()));
            }
        }
    }
    Ok(SmoothingEstimate { lower: lo, upper: hi, method: SmoothingMethod::TruncatedSumBisection, ..analytic })
}

/// [`smoothing_estimate_with`] at 1% relative width.
pub fn smoothing_estimate(basis: &LatticeBasis, eps: Epsilon) -> Result<SmoothingEstimate> {
    smoothing_estimate_with(basis, eps, 0.01)
}

/// Where an `η̃` value came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EtaProvenance {
    /// Candidate `k` of the halving schedule.
    Candidate(usize),
    Manual,
}

/// The Gaussian parameter fed to the reduction, ideally in `[2η_ε, 4η_ε]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EtaTilde {
    pub value: f64,
    pub provenance: EtaProvenance,
    /// `Some(true)` when a smoothing bracket proves `2η_ε ≤ value ≤ 4η_ε`.
    pub certified: Option<bool>,
}

impl EtaTilde {
    pub fn manual(value: f64) -> Self {
        Self { value, provenance: EtaProvenance::Manual, certified: None }
    }

    pub fn candidate(k: usize, value: f64) -> Self {
        Self { value, provenance: EtaProvenance::Candidate(k), certified: None }
    }

    pub fn certify(&mut self, est: &SmoothingEstimate) -> bool {
        let ok = self.value >= 2.0 * est.upper && self.value <= 4.0 * est.lower;
        self.certified = Some(ok);
        ok
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::stream;

    #[test]
    fn std_dev_convention() {
        let g = GaussianSpec::new(libm::sqrt(2.0 * PI)).unwrap();
        assert!((g.std_dev() - 1.0).abs() < 1e-12);
        assert!(GaussianSpec::new(0.0).is_err());
        assert!(GaussianSpec::new(f64::NAN).is_err());
    }

    #[test]
    fn continuous_sampling_is_deterministic() {
        let g = GaussianSpec::new(3.0).unwrap();
        let a = sample_continuous(&g, 5, &mut stream(11, 2));
        let b = sample_continuous(&g, 5, &mut stream(11, 2));
        assert_eq!(a, b);
        assert_ne!(a, sample_continuous(&g, 5, &mut stream(11, 3)));
    }

    #[test]
    fn linear_combination_edge_cases() {
        let xs = alloc::vec![alloc::vec![1.0, -2.0], alloc::vec![0.5, 0.5]];
        let single = linear_combination_bound_check(&[1, 0], &xs, 1.0).unwrap();
        assert_eq!(single.sum, xs[0]);
        assert!((single.bound - 2.0).abs() < 1e-12);
        let zero = linear_combination_bound_check(&[0, 0], &xs, 1.0).unwrap();
        assert_eq!(zero.sum, alloc::vec![0.0, 0.0]);
        assert!(zero.within_bound);
        assert!(linear_combination_bound_check(&[1], &xs, 1.0).is_err());
    }

    #[test]
    fn reduction_epsilon_in_log_space() {
        let e = Epsilon::reduction_default(64);
        // 64^{-6}
        assert!((e.ln() + 36.0 * libm::log(2.0)).abs() < 1e-9);
        let tiny = Epsilon::from_ln(-2000.0);
        assert_eq!(tiny.value(), 0.0);
        assert!((tiny.ln_one_plus_inverse() - 2000.0).abs() < 1e-9);
    }

    #[test]
    fn analytic_brackets_for_z2() {
        let (lo, hi) = analytic_smoothing_bounds(2, 1.0, 1.0, Epsilon::new(0.01).unwrap());
        // ε ≤ 2^{-1}, so 2λ_n·log₂ n = 2 beats √(ln 404) ≈ 2.45
        assert!((hi - 2.0).abs() < 1e-12);
        let (_, hi3) = analytic_smoothing_bounds(3, 1.0, 1.0, Epsilon::new(0.9).unwrap());
        assert!((hi3 - libm::sqrt(libm::log(6.0 * (1.0 + 1.0 / 0.9)))).abs() < 1e-12);
        // witness bound √(ln 200/π) ≈ 1.3 dominates 1/2
        assert!(lo >= 0.5);
    }

    #[test]
    fn tail_bound_decreases_with_radius() {
        let a = separated_tail_bound(3, 1.0, PI, 2.0);
        let b = separated_tail_bound(3, 1.0, PI, 4.0);
        assert!(a > b && b > 0.0);
        assert!(separated_tail_bound(3, 1.0, PI, 10.0) < 1e-100);
    }

    #[test]
    fn coset_sample_is_in_coset() {
        let b = LatticeBasis::from_i64(2, &[2, 1, -1, 3]).unwrap();
        let shift = alloc::vec![BigRational::new(1.into(), 3.into()), BigRational::new((-2).into(), 5.into())];
        let spec = GaussianSpec::new(4.0).unwrap();
        let sampler = CosetSampler::new(&b).unwrap();
        let mut rng = stream(3, 0);
        for _ in 0..50 {
            let s = sampler.sample(&shift, &spec, &mut rng).unwrap();
            let diff: Vec<BigRational> = s.point.iter().zip(&shift).map(|(p, y)| p - y).collect();
            let via_coeffs = b.combine(&s.coeffs).unwrap();
            for (d, c) in diff.iter().zip(&via_coeffs) {
                assert_eq!(d, &BigRational::from_integer(c.clone()));
            }
            assert!(s.truncation_bound < 1e-10);
        }
    }

    #[test]
    fn narrow_gaussian_picks_nearest_coset_point() {
        // ℤ² + (0.4, 0.3) at σ = 0.01: nothing within 6σ√2, nearest is (0.4, 0.3)
        let b = LatticeBasis::identity(2);
        let shift = alloc::vec![BigRational::new(2.into(), 5.into()), BigRational::new(3.into(), 10.into())];
        let spec = GaussianSpec::new(0.01).unwrap();
        let sampler = CosetSampler::new(&b).unwrap();
        let mut rng = stream(4, 0);
        for _ in 0..20 {
            let s = sampler.sample(&shift, &spec, &mut rng).unwrap();
            assert_eq!(s.point, shift);
            assert!(s.coeffs.iter().all(|c| *c == BigInt::from(0)));
        }
    }

    #[test]
    fn coset_budget_exceeded() {
        let b = LatticeBasis::identity(2);
        let spec = GaussianSpec::new(1000.0).unwrap();
        let sampler = CosetSampler::new(&b).unwrap().with_point_budget(100);
        let shift = alloc::vec![BigRational::from_integer(0.into()); 2];
        let r = sampler.sample(&shift, &spec, &mut stream(0, 0));
        assert!(matches!(r, Err(Error::Capability(_))));
    }

    #[test]
    fn bisection_on_integers() {
        let eps = Epsilon::new(0.05).unwrap();
        let est = smoothing_estimate(&LatticeBasis::identity(1), eps).unwrap();
        let direct = |s: f64| (1..50).map(|k| 2.0 * libm::exp(-PI * s * s * (k * k) as f64)).sum::<f64>();
        assert!(direct(est.lower) > 0.05 && direct(est.upper) <= 0.05);
        let m = direct(est.value());
        assert!(m >= 0.95 * 0.05 && m <= 1.05 * 0.05, "{m}");
        assert!(est.upper - est.lower <= 0.01 * est.upper);
    }
}
