//! Statistical distance of reductions mod q, the lifting property, and
//! uniformity testing of the reduction's matrix columns.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::ops::ControlFlow;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;

use crate::error::{Error, Result};
use crate::gaussian::{sample_continuous, Epsilon, GaussianSpec};
use crate::lattice::LatticeBasis;
use crate::matrix::IntegerMatrix;
use crate::rng::stream;
use crate::sis::scan_canonical_box;

fn ratio(p: u128, q: u128) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

/// Distance between `X mod q` for `X` uniform on `{0, …, Q−1}` and uniform on `ℤ_q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModDistanceReport {
    pub big_q: u64,
    pub q: u64,
    /// `Q = q·t + r` with `0 ≤ r < q`.
    pub t: u64,
    pub r: u64,
    /// `r(q−r)/(Qq)`.
    pub delta_exact: BigRational,
    /// `q/(4Q)`.
    pub upper_bound: BigRational,
    pub uniform: bool,
}

pub fn exact_mod_distance(big_q: u64, q: u64) -> Result<ModDistanceReport> {
    if big_q == 0 || q < 2 {
        return Err(Error::Domain(format!("need Q ≥ 1 and q ≥ 2, got Q = {big_q}, q = {q}")));
    }
    let (t, r) = (big_q / q, big_q % q);
    Ok(ModDistanceReport {
        big_q,
        q,
        t,
        r,
        delta_exact: ratio(r as u128 * (q - r) as u128, big_q as u128 * q as u128),
        upper_bound: ratio(q as u128, 4 * big_q as u128),
        uniform: r == 0,
    })
}

/// Bounds on the distance of `A mod q` from uniform on `ℤ_q^{n×m}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixModBound {
    /// `min(1, nmq/(4Q))`; zero when `q | Q`.
    pub bound: BigRational,
    /// `min(1, nm·Δ)` with the exact single-entry distance `Δ`.
    pub product_bound: BigRational,
    /// `nm·Δ` before capping.
    pub product_raw: BigRational,
}

pub fn matrix_mod_distance_bound(n: u64, m: u64, big_q: u64, q: u64) -> Result<MatrixModBound> {
    let single = exact_mod_distance(big_q, q)?;
    let one = BigRational::one();
    if single.uniform {
        let z = BigRational::zero();
        return Ok(MatrixModBound { bound: z.clone(), product_bound: z.clone(), product_raw: z });
    }
    let nm = BigRational::from_integer(BigInt::from(n) * BigInt::from(m));
    let bound = (&nm * &single.upper_bound).min(one.clone());
    let product_raw = &nm * &single.delta_exact;
    Ok(MatrixModBound { bound, product_bound: product_raw.clone().min(one), product_raw })
}

/// Outcome of checking the lifting property for one matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiftReport {
    pub big_q: u64,
    pub beta: u64,
    pub q: u64,
    /// `m(Q−1)β`.
    pub threshold: u128,
    /// `q > m(Q−1)β`: every `|(Az)_i| ≤ m(Q−1)β < q`, so `Az ≡ 0` forces `Az = 0`.
    pub analytic: bool,
    /// Exhaustive scan over `‖z‖_∞ ≤ β`, `None` when over budget.
    pub exhaustive: Option<LiftScan>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiftScan {
    /// Sign-canonical vectors visited (each stands for `±z`).
    pub checked: u64,
    /// Vectors with `Az ≡ 0 (mod q)` but `Az ≠ 0`, counted up to sign.
    pub violations: u64,
    pub first_violation: Option<Vec<i64>>,
}

impl LiftReport {
    /// The property holds: certified analytically, or by a clean complete scan.
    pub fn holds(&self) -> Option<bool> {
        match &self.exhaustive {
            Some(s) => Some(s.violations == 0),
            None if self.analytic => Some(true),
            None => None,
        }
    }
}

pub const LIFT_SCAN_BUDGET: u64 = 100_000_000;

/// Lifting check for `A ∈ 𝒞_Q^{n×m}` with the default scan budget.
pub fn lift_check(a: &IntegerMatrix, big_q: u64, beta: u64, q: u64) -> Result<LiftReport> {
    lift_check_with(a, big_q, beta, q, LIFT_SCAN_BUDGET)
}

pub fn lift_check_with(a: &IntegerMatrix, big_q: u64, beta: u64, q: u64, budget: u64) -> Result<LiftReport> {
    if q < 2 || big_q == 0 {
        return Err(Error::Domain(format!("need Q ≥ 1 and q ≥ 2, got Q = {big_q}, q = {q}")));
    }
    let (n, m) = (a.rows(), a.cols());
    let qb = BigInt::from(big_q);
    if a.entries().iter().any(|x| *x < BigInt::zero() || *x >= qb) {
        return Err(Error::EntryBound(format!("matrix entries must lie in {{0..{}}}", big_q - 1)));
    }
    let threshold = m as u128 * (big_q - 1) as u128 * beta as u128;
    let analytic = q as u128 > threshold;
    let box_size = (2 * beta as u128 + 1).checked_pow(m as u32);
    let exhaustive = if beta == 0 {
        Some(LiftScan { checked: 0, violations: 0, first_violation: None })
    } else if box_size.is_some_and(|s| s <= budget as u128) && threshold < (1u128 << 62) {
        let cols: Vec<Vec<i64>> = (0..m)
            .map(|j| (0..n).map(|i| a.get(i, j).to_i64().expect("bounded entry")).collect())
            .collect();
        let qi = q as i64;
        let mut scan = LiftScan { checked: 0, violations: 0, first_violation: None };
        scan_canonical_box(&cols, beta as i64, |z, s| {
            scan.checked += 1;
            if s.iter().all(|&x| x % qi == 0) && s.iter().any(|&x| x != 0) {
                scan.violations += 1;
                if scan.first_violation.is_none() {
                    scan.first_violation = Some(z.to_vec());
                }
            }
            ControlFlow::Continue(())
        });
        Some(scan)
    } else {
        None
    };
    Ok(LiftReport { big_q, beta, q, threshold, analytic, exhaustive })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Incompatible,
    Compatible,
    Inapplicable,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Incompatible => "incompatible",
            Verdict::Compatible => "compatible",
            Verdict::Inapplicable => "proposition inapplicable",
        }
    }
}

/// Whether any modulus `q` gives both the lifting property and near-uniform
/// `A mod q`.
///
/// Lifting needs `q > m(Q−1)β`. Uniformity needs `q | Q` (exact) or, when
/// `q ∤ Q`, a distance bound `nmq/(4Q)` that is small, which is pinned here
/// to `q ≤ Q/(nm)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IncompatibilityReport {
    pub n: u64,
    pub m: u64,
    pub big_q: u64,
    pub beta: u64,
    /// `m(Q−1)β`.
    pub lifting_threshold: u128,
    /// `Q/(nm)`, the largest non-divisor modulus counted as near-uniform.
    pub uniformity_ceiling: BigRational,
    /// `nmq/(4Q)` at the smallest lifting modulus `q = m(Q−1)β + 1`.
    pub uniformity_bound_at_threshold: BigRational,
    /// Largest `q ≥ 2` passing the uniformity side (0 if none).
    pub max_uniform_q: u64,
    pub verdict: Verdict,
    pub witness: Vec<String>,
}

pub fn incompatibility_report(n: u64, m: u64, big_q: u64, beta: u64) -> IncompatibilityReport {
    let threshold = m as u128 * big_q.saturating_sub(1) as u128 * beta as u128;
    let nm = n as u128 * m as u128;
    let ceiling = ratio(big_q as u128, nm.max(1));
    let q0 = threshold + 1;
    let at_threshold = ratio(nm * q0, 4 * big_q.max(1) as u128);
    let floor_ceiling = (big_q as u128 / nm.max(1)) as u64;
    let divisor_q = if big_q >= 2 { big_q } else { 0 };
    let max_uniform_q = divisor_q.max(if floor_ceiling >= 2 { floor_ceiling } else { 0 });
    let mut witness = Vec::new();
    let verdict = if n <= 2 || m <= 2 || beta < 1 || big_q == 0 {
        witness.push(format!("hypotheses n > 2, m > 2, β ≥ 1 fail for n = {n}, m = {m}, β = {beta}"));
        Verdict::Inapplicable
    } else {
        witness.push(format!(
            "q | Q ⇒ q ≤ Q = {big_q} ≤ 3(Q−1) = {} ≤ m(Q−1)β = {threshold} < q required for lifting",
            3 * (big_q - 1)
        ));
        witness.push(format!(
            "q ∤ Q ⇒ q ≤ Q/(nm) = {big_q}/{nm} < {q0} = m(Q−1)β + 1 ≤ q required for lifting"
        ));
        witness.push(format!("at q = {q0}: nmq/(4Q) = {at_threshold}"));
        if (max_uniform_q as u128) <= threshold {
            Verdict::Incompatible
        } else {
            Verdict::Compatible
        }
    };
    IncompatibilityReport {
        n,
        m,
        big_q,
        beta,
        lifting_threshold: threshold,
        uniformity_ceiling: ceiling,
        uniformity_bound_at_threshold: at_threshold,
        max_uniform_q,
        verdict,
        witness,
    }
}

/// Plug-in estimate of the distance to uniform on a finite domain.
#[derive(Debug, Clone, PartialEq)]
pub struct EmpiricalDistance {
    pub domain_size: u64,
    pub samples: u64,
    /// `½ Σ |p̂(a) − 1/|domain||`.
    pub estimate: f64,
    /// 99% deviation bound from the `ℓ₁` concentration inequality
    /// `P(‖p̂ − p‖₁ ≥ λ) ≤ 2^k e^{−Nλ²/2}`, halved.
    pub half_width: f64,
    /// Fewer than `10·|domain|` samples: the plug-in estimate is biased upward.
    pub bias_warning: bool,
}

impl EmpiricalDistance {
    /// From a histogram over the whole domain.
    pub fn from_counts(counts: &[u64]) -> Self {
        let k = counts.len() as f64;
        let n: u64 = counts.iter().sum();
        let nf = n.max(1) as f64;
        let estimate = 0.5 * counts.iter().map(|&c| (c as f64 / nf - 1.0 / k).abs()).sum::<f64>();
        Self {
            domain_size: counts.len() as u64,
            samples: n,
            estimate,
            half_width: 0.5 * libm::sqrt(2.0 * (k * core::f64::consts::LN_2 + libm::log(100.0)) / nf),
            bias_warning: (n as f64) < 10.0 * k,
        }
    }
}

/// Draws `trials` values in `0..domain` from `sampler` and compares to uniform.
pub fn empirical_statistical_distance<F>(domain: usize, trials: u64, mut sampler: F) -> Result<EmpiricalDistance>
where
    F: FnMut() -> usize,
{
    if domain == 0 || trials == 0 {
        return Err(Error::Domain("empty domain or no trials".into()));
    }
    let mut counts = vec![0u64; domain];
    for _ in 0..trials {
        let x = sampler();
        if x >= domain {
            return Err(Error::Domain(format!("sample {x} outside domain of size {domain}")));
        }
        counts[x] += 1;
    }
    Ok(EmpiricalDistance::from_counts(&counts))
}

/// Source of points in `P(B)` for [`column_uniformity_test`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum UniformityChannel {
    /// `x ← D_η̃`, reduced mod `P(B)`.
    Gaussian { eta: f64 },
    /// `y = B·u` with `u` uniform on `[0,1)ⁿ`; the sanity channel.
    ExactUniform,
}

/// Largest `Qⁿ` tabulated as a joint histogram.
pub const JOINT_TABLE_LIMIT: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq)]
pub struct UniformityReport {
    pub channel: UniformityChannel,
    pub big_q: u64,
    pub n: usize,
    /// Joint distance over `𝒞_Qⁿ` when `Qⁿ ≤` [`JOINT_TABLE_LIMIT`].
    pub joint: Option<EmpiricalDistance>,
    pub marginals: Vec<EmpiricalDistance>,
    /// Pairwise equal columns among the first samples, and the uniform expectation.
    pub collisions: Option<(u64, f64)>,
}

impl UniformityReport {
    /// Joint estimate, or the largest marginal estimate when untabulated.
    pub fn statistic(&self) -> f64 {
        match &self.joint {
            Some(j) => j.estimate,
            None => self.marginals.iter().map(|d| d.estimate).fold(0.0, f64::max),
        }
    }
}

const COLLISION_SAMPLES: usize = 100_000;

/// Monte Carlo test that `a = ⌊Q·B⁻¹y⌋` is uniform on `𝒞_Qⁿ`.
///
/// Runs in floating point: the parallelepiped coordinates are `frac(B⁻¹x)`.
/// Boundary effects are below `f64` resolution and far below the Monte Carlo
/// noise at any feasible sample count.
pub fn column_uniformity_test(
    basis: &LatticeBasis,
    big_q: u64,
    channel: UniformityChannel,
    trials: u64,
    seed: u64,
) -> Result<UniformityReport> {
    let n = basis.dim();
    if big_q == 0 || trials == 0 {
        return Err(Error::Domain("need Q ≥ 1 and at least one trial".into()));
    }
    let spec = match channel {
        UniformityChannel::Gaussian { eta } => Some(GaussianSpec::new(eta)?),
        UniformityChannel::ExactUniform => None,
    };
    let cells = (big_q as u128).checked_pow(n as u32);
    let tabulate = cells.is_some_and(|c| c <= JOINT_TABLE_LIMIT as u128);
    let mut joint = if tabulate { vec![0u64; cells.unwrap() as usize] } else { Vec::new() };
    let mut marg = vec![vec![0u64; big_q.min(JOINT_TABLE_LIMIT) as usize]; n];
    if big_q > JOINT_TABLE_LIMIT {
        return Err(Error::Capability(format!("Q = {big_q} too large for marginal histograms")));
    }
    let mut firsts: Vec<Vec<u64>> = Vec::new();
    let inv = basis.inverse_f64();
    let mut rng = stream(seed, 0);
    let qf = big_q as f64;
    let mut a = vec![0u64; n];
    let mut frac = vec![0.0; n];
    for _ in 0..trials {
        match &spec {
            Some(g) => {
                let x = sample_continuous(g, n, &mut rng);
                for (i, f) in frac.iter_mut().enumerate() {
                    let k: f64 = (0..n).map(|j| inv[i * n + j] * x[j]).sum();
                    *f = k - libm::floor(k);
                }
            }
            None => frac.iter_mut().for_each(|f| *f = rng.random::<f64>()),
        }
        let mut idx = 0u64;
        for i in (0..n).rev() {
            a[i] = (libm::floor(qf * frac[i]) as u64).min(big_q - 1);
            marg[i][a[i] as usize] += 1;
            if tabulate {
                idx = idx * big_q + a[i];
            }
        }
        if tabulate {
            joint[idx as usize] += 1;
        } else if firsts.len() < COLLISION_SAMPLES {
            firsts.push(a.clone());
        }
    }
    let collisions = (!tabulate).then(|| {
        let k = firsts.len() as f64;
        firsts.sort_unstable();
        let c = firsts.windows(2).filter(|w| w[0] == w[1]).count() as u64;
        let cells_f = libm::pow(qf, n as f64);
        (c, k * (k - 1.0) / 2.0 / cells_f)
    });
    Ok(UniformityReport {
        channel,
        big_q,
        n,
        joint: tabulate.then(|| EmpiricalDistance::from_counts(&joint)),
        marginals: marg.iter().map(|c| EmpiricalDistance::from_counts(c)).collect(),
        collisions,
    })
}

/// Null band for [`UniformityReport::statistic`]: the empirical
/// `quantile` of the statistic over `replicates` runs of the exact-uniform
/// channel, each with its own derived seed.
pub fn uniformity_null_band(
    basis: &LatticeBasis,
    big_q: u64,
    trials: u64,
    replicates: u64,
    quantile: f64,
    seed: u64,
) -> Result<f64> {
    if replicates == 0 || !(0.0..=1.0).contains(&quantile) {
        return Err(Error::Domain("need replicates ≥ 1 and quantile in [0, 1]".into()));
    }
    let mut stats = Vec::with_capacity(replicates as usize);
    for r in 0..replicates {
        let s = crate::rng::derive_seed(seed, r);
        stats.push(column_uniformity_test(basis, big_q, UniformityChannel::ExactUniform, trials, s)?.statistic());
    }
    stats.sort_by(f64::total_cmp);
    let idx = libm::ceil(quantile * replicates as f64) as usize;
    Ok(stats[idx.clamp(1, stats.len()) - 1])
}

/// `ln(mε/2)`: the analytic distance bound for `m` columns at smoothing
/// tolerance `ε`, kept in log-space since it underflows at the reduction's `ε`.
pub fn ln_column_distance_bound(m: u64, eps: Epsilon) -> f64 {
    libm::log(m as f64) + eps.ln() - core::f64::consts::LN_2
}
